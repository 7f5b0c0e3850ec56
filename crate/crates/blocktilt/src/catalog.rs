//! The catalog of distinguished chain maps between components of the
//! elementary two-term complex: stalk steps, one-step maps along an arc,
//! boundary and zone-boundary maps, corner and diagonal self-maps, and the
//! letter-power families.  Every instance carries an applicability
//! predicate; [`verify_catalog`] checks that each applicable instance
//! commutes exactly and is not null-homotopic, apart from the documented
//! homotopy-trivial combinations which it measures and reports.

use crate::algebra::{BlockParams, Element};
use crate::fp;
use crate::tilt::{
    tilting_component, ArcDecomposition, ArcZone, ChainMap, PairSpace, TiltComponent,
};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// Families of catalog maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Adjacent,
    Gamma,
    EpsilonU,
    EpsilonV,
    MuU,
    NuV,
    Xi1,
    Xi2,
    B1,
    B2,
    C1,
    C2,
    C3,
    D1,
    D2,
    D3,
    E1,
    E2,
    E3,
    E4,
    E5,
}

/// Which of the two letters (equivalently, which flanking vertex) an
/// instance is built from: `U` for the x-side, `V` for the y-side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    U,
    V,
}

/// Residue and exponent data pinning one instance of a family.  Unused
/// fields stay `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Site {
    /// Primary residue (source component, or the component acted on).
    pub t: Option<u64>,
    /// Secondary residue (target component).
    pub tt: Option<u64>,
    /// Auxiliary stalk residue (source stalk of the beta and power maps).
    pub w: Option<u64>,
    pub side: Option<Side>,
    /// Letter-power multiplier: exponents of the form `h*r` or offsets.
    pub h: Option<u64>,
    /// Diagonal power of `xy`.
    pub q: Option<u64>,
}

/// Free scalar coefficients.  Families that use none ignore all fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coeffs {
    pub d0: u64,
    pub c0: u64,
    pub e0: u64,
    pub f0: u64,
    pub h0: u64,
}

impl Default for Coeffs {
    fn default() -> Self {
        Coeffs {
            d0: 1,
            c0: 1,
            e0: 1,
            f0: 1,
            h0: 1,
        }
    }
}

/// One catalog instance, fully determined by family, site, and scalars.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CatalogMapId {
    pub tag: Tag,
    pub site: Site,
    pub coeffs: Coeffs,
}

impl CatalogMapId {
    fn new(tag: Tag, site: Site) -> CatalogMapId {
        CatalogMapId {
            tag,
            site,
            coeffs: Coeffs::default(),
        }
    }
}

impl fmt::Display for CatalogMapId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}(", self.tag)?;
        let mut sep = "";
        let mut field = |f: &mut fmt::Formatter<'_>, name: &str, v: String| {
            let r = write!(f, "{sep}{name}={v}");
            sep = ",";
            r
        };
        if let Some(t) = self.site.t {
            field(f, "t", t.to_string())?;
        }
        if let Some(tt) = self.site.tt {
            field(f, "tt", tt.to_string())?;
        }
        if let Some(w) = self.site.w {
            field(f, "w", w.to_string())?;
        }
        if let Some(side) = self.site.side {
            field(f, "side", format!("{side:?}"))?;
        }
        if let Some(h) = self.site.h {
            field(f, "h", h.to_string())?;
        }
        if let Some(q) = self.site.q {
            field(f, "q", q.to_string())?;
        }
        let c = &self.coeffs;
        if *c != Coeffs::default() {
            field(
                f,
                "coeffs",
                format!("[{},{},{},{},{}]", c.d0, c.c0, c.e0, c.f0, c.h0),
            )?;
        }
        write!(f, ")")
    }
}

/// A built catalog map.
#[derive(Debug, Clone)]
pub struct CatalogInstance {
    pub id: CatalogMapId,
    pub map: ChainMap,
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("inapplicable {tag:?} instance: {predicate}")]
    Inapplicable { tag: Tag, predicate: String },
    #[error("malformed id: {0}")]
    Malformed(String),
}

fn reject<T>(tag: Tag, predicate: impl Into<String>) -> Result<T, BuildError> {
    Err(BuildError::Inapplicable {
        tag,
        predicate: predicate.into(),
    })
}

fn need(field: Option<u64>, name: &str) -> Result<u64, BuildError> {
    field.ok_or_else(|| BuildError::Malformed(format!("missing site field {name}")))
}

fn need_side(field: Option<Side>) -> Result<Side, BuildError> {
    field.ok_or_else(|| BuildError::Malformed("missing site field side".into()))
}

/// Index of the x-power entry of the differential (the summand below).
fn u_slot(c: &TiltComponent) -> Option<usize> {
    c.d.iter().position(|e| {
        e.terms().all(|(m, _)| m.b == 0) && !e.is_zero()
    })
}

/// Index of the y-power entry of the differential (the summand above).
fn v_slot(c: &TiltComponent) -> Option<usize> {
    c.d.iter().position(|e| {
        e.terms().all(|(m, _)| m.a == 0) && !e.is_zero()
    })
}

struct Builder<'a> {
    dec: &'a ArcDecomposition,
    params: BlockParams,
}

impl<'a> Builder<'a> {
    fn new(dec: &'a ArcDecomposition) -> Builder<'a> {
        Builder {
            dec,
            params: *dec.params(),
        }
    }

    fn comp(&self, t: u64) -> TiltComponent {
        tilting_component(self.dec, t)
    }

    fn mono(&self, a: u64, b: u64, base: u64, coeff: u64) -> Element {
        Element::monomial(&self.params, a as u32, b as u32, base, coeff % self.params.p())
    }

    fn neg(&self, c: u64) -> u64 {
        fp::neg(self.params.p(), c)
    }

    /// Arc data `(u, v, j, a, b)` for a non-selected residue.
    fn member_data(&self, tag: Tag, t: u64) -> Result<(u64, u64, u64, u64, u64), BuildError> {
        match (self.dec.uv(t), self.dec.ab(t)) {
            (Some((u, v)), Some((a, b))) => {
                let j = self.dec.arc_of(t).unwrap().j;
                Ok((u, v, j, a, b))
            }
            _ => reject(tag, format!("residue {t} is not inside an arc")),
        }
    }

    fn zone(&self, t: u64) -> Option<ArcZone> {
        self.dec.zone(t)
    }
}

/// Builds the chain map for an id, validating its applicability predicate.
pub fn build_map(dec: &ArcDecomposition, id: &CatalogMapId) -> Result<CatalogInstance, BuildError> {
    let b = Builder::new(dec);
    let map = match id.tag {
        Tag::Adjacent => build_adjacent(&b, id)?,
        Tag::Gamma => build_gamma(&b, id)?,
        Tag::EpsilonU | Tag::EpsilonV => build_epsilon(&b, id)?,
        Tag::MuU | Tag::NuV => build_mu_nu(&b, id)?,
        Tag::Xi1 | Tag::Xi2 => build_xi(&b, id)?,
        Tag::B1 | Tag::B2 => build_b(&b, id)?,
        Tag::C1 => build_c1(&b, id)?,
        Tag::C2 => build_c2(&b, id)?,
        Tag::C3 => build_c3(&b, id)?,
        Tag::D1 | Tag::D2 => build_d12(&b, id)?,
        Tag::D3 => build_d3(&b, id)?,
        Tag::E1 => build_e1(&b, id)?,
        Tag::E2 => build_e2(&b, id)?,
        Tag::E3 => build_e3(&b, id)?,
        Tag::E4 => build_e4(&b, id)?,
        Tag::E5 => build_e5(&b, id)?,
    };
    debug_assert!(map.is_chain_map(), "catalog instance must commute: {id}");
    debug_assert!(!map.is_zero(), "catalog instance must be nonzero: {id}");
    Ok(CatalogInstance { id: *id, map })
}

fn build_adjacent(b: &Builder, id: &CatalogMapId) -> Result<ChainMap, BuildError> {
    let tag = Tag::Adjacent;
    let t = need(id.site.t, "t")?;
    let tt = need(id.site.tt, "tt")?;
    let p = b.params.p();
    let pm1 = p - 1;
    let sel_t = b.dec.contains(t);
    let sel_tt = b.dec.contains(tt);
    if sel_t && sel_tt {
        // Jump maps between the two flanking stalks of a short arc.
        let side = need_side(id.site.side)?;
        let (arc, letter_from, letter_to) = match side {
            Side::U => (b.dec.arcs().iter().find(|a| a.u == t && a.v == tt), t, tt),
            Side::V => (b.dec.arcs().iter().find(|a| a.v == t && a.u == tt), t, tt),
        };
        let Some(arc) = arc else {
            return reject(tag, format!("no arc flanked by {letter_from} and {letter_to}"));
        };
        if arc.j > pm1 {
            return reject(tag, format!("jump maps need span j <= p-1 (j={} > {pm1})", arc.j));
        }
        let src = b.comp(t);
        let tgt = b.comp(tt);
        let mut m = ChainMap::zero(&src, &tgt);
        m.f0[0][0] = match side {
            Side::U => b.mono(arc.j, 0, tt, 1),
            Side::V => b.mono(0, arc.j, tt, 1),
        };
        return Ok(m);
    }
    if sel_t && !sel_tt {
        // Long arrow from a flanking stalk to the farthest double.
        let side = need_side(id.site.side)?;
        let (u, v, j, a, bb) = b.member_data(tag, tt)?;
        if j < p {
            return reject(tag, format!("long arrows need span j >= p (j={j})"));
        }
        let tgt = b.comp(tt);
        let src = b.comp(t);
        let mut m = ChainMap::zero(&src, &tgt);
        match side {
            Side::U => {
                if t != u || a != pm1 {
                    return reject(tag, "x-long arrow runs from u to the member at distance p-1");
                }
                let k = u_slot(&tgt).unwrap();
                m.f0[0][k] = b.mono(1, 1, u, 1);
            }
            Side::V => {
                if t != v || bb != pm1 {
                    return reject(tag, "y-long arrow runs from v to the member at distance p-1");
                }
                let k = v_slot(&tgt).unwrap();
                m.f0[0][k] = b.mono(1, 1, v, 1);
            }
        }
        return Ok(m);
    }
    if !sel_t && sel_tt {
        // Boundary map from the edge member onto its flanking stalk.
        let side = need_side(id.site.side)?;
        let (u, v, _j, a, bb) = b.member_data(tag, t)?;
        let src = b.comp(t);
        let tgt = b.comp(tt);
        let mut m = ChainMap::zero(&src, &tgt);
        match side {
            Side::U => {
                if tt != u || a != 1 {
                    return reject(tag, "the u-boundary map runs from the member at distance 1 to u");
                }
                let i = u_slot(&src).unwrap();
                m.f0[i][0] = b.mono(0, 0, u, 1);
            }
            Side::V => {
                if tt != v || bb != 1 {
                    return reject(tag, "the v-boundary map runs from the member at distance 1 to v");
                }
                let i = v_slot(&src).unwrap();
                m.f0[i][0] = b.mono(0, 0, v, 1);
            }
        }
        return Ok(m);
    }
    // One-step maps between consecutive members.
    let fwd = b.params.ovr_sub(tt, t) == 1;
    let bwd = b.params.ovr_sub(t, tt) == 1;
    if !fwd && !bwd {
        return reject(tag, format!("{t} and {tt} are not consecutive"));
    }
    let (zs, zt) = (b.zone(t), b.zone(tt));
    let (Some(zs), Some(zt)) = (zs, zt) else {
        return reject(tag, "one-step maps connect two arc members");
    };
    if b.dec.arc_of(t).map(|a| a.u) != b.dec.arc_of(tt).map(|a| a.u) {
        return reject(tag, "one-step maps stay inside a single arc");
    }
    let src = b.comp(t);
    let tgt = b.comp(tt);
    let mut m = ChainMap::zero(&src, &tgt);
    use ArcZone::*;
    if fwd {
        match (zs, zt) {
            (Double, Double) => return reject(tag, "forward step between doubles is the first diagonal step family"),
            (Double, SingleV) => return reject(tag, "forward step from the last double is the v-side zone-boundary family"),
            (SingleU, SingleU) => {
                m.f0[0][0] = b.mono(0, 0, tgt.deg0[0], 1);
            }
            (SingleV, SingleV) => {
                m.f0[0][0] = b.mono(1, 1, tgt.deg0[0], 1);
            }
            (SingleU, Double) => {
                let k = u_slot(&tgt).unwrap();
                m.f0[0][k] = b.mono(0, 0, tgt.deg0[k], 1);
            }
            (SingleU, SingleV) | (SingleU, Gap) | (Gap, Gap) | (Gap, SingleV) => {}
            (z1, z2) => return reject(tag, format!("no forward step between zones {z1:?} -> {z2:?}")),
        }
        if !tgt.deg1.is_empty() && !src.deg1.is_empty() {
            m.f1 = Some(b.mono(1, 0, tt, 1));
        }
    } else {
        match (zs, zt) {
            (Double, Double) => return reject(tag, "backward step between doubles is the second diagonal step family"),
            (Double, SingleU) => return reject(tag, "backward step from the first double is the u-side zone-boundary family"),
            (SingleU, SingleU) => {
                m.f0[0][0] = b.mono(1, 1, tgt.deg0[0], 1);
            }
            (SingleV, SingleV) => {
                m.f0[0][0] = b.mono(0, 0, tgt.deg0[0], 1);
            }
            (SingleV, Double) => {
                let k = v_slot(&tgt).unwrap();
                m.f0[0][k] = b.mono(0, 0, tgt.deg0[k], 1);
            }
            (SingleV, SingleU) | (SingleV, Gap) | (Gap, Gap) | (Gap, SingleU) => {}
            (z1, z2) => return reject(tag, format!("no backward step between zones {z1:?} -> {z2:?}")),
        }
        if !tgt.deg1.is_empty() && !src.deg1.is_empty() {
            m.f1 = Some(b.mono(0, 1, tt, 1));
        }
    }
    if m.is_zero() {
        return reject(tag, "degenerate one-step with no degree-0 or degree-1 content");
    }
    Ok(m)
}

fn build_gamma(b: &Builder, id: &CatalogMapId) -> Result<ChainMap, BuildError> {
    let tag = Tag::Gamma;
    let t = need(id.site.t, "t")?;
    let tt = need(id.site.tt, "tt")?;
    if !b.dec.contains(t) || !b.dec.contains(tt) {
        return reject(tag, "stalk steps connect selected residues");
    }
    let src = b.comp(t);
    let tgt = b.comp(tt);
    let mut m = ChainMap::zero(&src, &tgt);
    if t == tt {
        let iv = b.dec.interval_of(t).unwrap();
        if b.dec.intervals()[iv].len() != 1 {
            return reject(tag, "the two-letter self-step lives on a one-point interval");
        }
        m.f0[0][0] = b.mono(1, 1, t, 1);
    } else if b.params.ovr_sub(tt, t) == 1 {
        m.f0[0][0] = b.mono(1, 0, tt, 1);
    } else if b.params.ovr_sub(t, tt) == 1 {
        m.f0[0][0] = b.mono(0, 1, tt, 1);
    } else {
        return reject(tag, format!("stalk steps connect consecutive residues, got {t} -> {tt}"));
    }
    Ok(m)
}

fn build_epsilon(b: &Builder, id: &CatalogMapId) -> Result<ChainMap, BuildError> {
    let tag = id.tag;
    let t = need(id.site.t, "t")?;
    let tt = need(id.site.tt, "tt")?;
    let p = b.params.p();
    let arc = match tag {
        Tag::EpsilonU => b.dec.arcs().iter().find(|a| a.u == t),
        _ => b.dec.arcs().iter().find(|a| a.v == t),
    };
    let Some(arc) = arc else {
        return reject(tag, format!("{t} does not flank an arc on the required side"));
    };
    let j = arc.j;
    if j > p - 1 {
        return reject(tag, format!("the corner stalk maps need span j <= p-1 (j={j})"));
    }
    let (u, v) = (arc.u, arc.v);
    let expected_tt = match tag {
        Tag::EpsilonU => b.params.ovr(v as i64 - 1),
        _ => b.params.ovr(u as i64 + 1),
    };
    if tt != expected_tt {
        return reject(tag, format!("target must be {expected_tt}, got {tt}"));
    }
    let src = b.comp(t);
    let tgt = b.comp(tt);
    let ku = u_slot(&tgt).unwrap();
    let kv = v_slot(&tgt).unwrap();
    let mut m = ChainMap::zero(&src, &tgt);
    match tag {
        Tag::EpsilonU => {
            m.f0[0][ku] = b.mono(1, 1, u, 1);
            m.f0[0][kv] = b.mono(j, 0, v, b.neg(1));
        }
        _ => {
            m.f0[0][ku] = b.mono(0, j, u, b.neg(1));
            m.f0[0][kv] = b.mono(1, 1, v, 1);
        }
    }
    Ok(m)
}

fn build_mu_nu(b: &Builder, id: &CatalogMapId) -> Result<ChainMap, BuildError> {
    let tag = id.tag;
    let t = need(id.site.t, "t")?;
    let tt = need(id.site.tt, "tt")?;
    let p = b.params.p();
    let (u, v, j, a, bb) = b.member_data(tag, t)?;
    if !(j > p && j <= 2 * (p - 1)) {
        return reject(tag, format!("zone-boundary steps need p < j <= 2(p-1) (j={j})"));
    }
    let src = b.comp(t);
    let tgt = b.comp(tt);
    let mut m = ChainMap::zero(&src, &tgt);
    match tag {
        Tag::MuU => {
            // First double down to the last u-side single.
            if a != j - p + 1 {
                return reject(tag, "source must be the first double (a = j-p+1)");
            }
            if b.params.ovr_sub(t, tt) != 1 {
                return reject(tag, "target must be the preceding member");
            }
            let i = u_slot(&src).unwrap();
            m.f0[i][0] = b.mono(1, 1, u, 1);
            m.f1 = Some(b.mono(0, 1, tt, 1));
        }
        _ => {
            // Last double down to the first v-side single.
            if bb != j - p + 1 {
                return reject(tag, "source must be the last double (b = j-p+1)");
            }
            if b.params.ovr_sub(tt, t) != 1 {
                return reject(tag, "target must be the following member");
            }
            let i = v_slot(&src).unwrap();
            m.f0[i][0] = b.mono(1, 1, v, 1);
            m.f1 = Some(b.mono(1, 0, tt, 1));
        }
    }
    Ok(m)
}

fn build_xi(b: &Builder, id: &CatalogMapId) -> Result<ChainMap, BuildError> {
    let tag = id.tag;
    let t = need(id.site.t, "t")?;
    let tt = need(id.site.tt, "tt")?;
    let step_ok = match tag {
        Tag::Xi1 => b.params.ovr_sub(tt, t) == 1,
        _ => b.params.ovr_sub(t, tt) == 1,
    };
    if !step_ok {
        return reject(tag, format!("diagonal steps connect consecutive members, got {t} -> {tt}"));
    }
    if b.zone(t) != Some(ArcZone::Double) || b.zone(tt) != Some(ArcZone::Double) {
        return reject(tag, "diagonal steps connect two doubles");
    }
    let src = b.comp(t);
    let tgt = b.comp(tt);
    let (iu, iv) = (u_slot(&src).unwrap(), v_slot(&src).unwrap());
    let (ku, kv) = (u_slot(&tgt).unwrap(), v_slot(&tgt).unwrap());
    let mut m = ChainMap::zero(&src, &tgt);
    match tag {
        Tag::Xi1 => {
            m.f0[iu][ku] = b.mono(0, 0, tgt.deg0[ku], 1);
            m.f0[iv][kv] = b.mono(1, 1, tgt.deg0[kv], 1);
            m.f1 = Some(b.mono(1, 0, tt, 1));
        }
        _ => {
            m.f0[iu][ku] = b.mono(1, 1, tgt.deg0[ku], 1);
            m.f0[iv][kv] = b.mono(0, 0, tgt.deg0[kv], 1);
            m.f1 = Some(b.mono(0, 1, tt, 1));
        }
    }
    Ok(m)
}

fn build_b(b: &Builder, id: &CatalogMapId) -> Result<ChainMap, BuildError> {
    let tag = id.tag;
    let t = need(id.site.t, "t")?;
    let p = b.params.p();
    let (u, v, j, a, bb) = b.member_data(tag, t)?;
    if j > p - 1 {
        return reject(tag, format!("corner self-maps need span j <= p-1 (j={j})"));
    }
    if b.zone(t) != Some(ArcZone::Double) {
        return reject(tag, "corner self-maps act on doubles");
    }
    let c = b.comp(t);
    let (iu, iv) = (u_slot(&c).unwrap(), v_slot(&c).unwrap());
    let mut m = ChainMap::zero(&c, &c);
    match tag {
        Tag::B1 => {
            let d0 = id.coeffs.d0 % p;
            if d0 == 0 {
                return reject(tag, "zero coefficient gives the zero map");
            }
            m.f0[iu][iu] = b.mono(bb, bb, u, b.neg(d0));
            m.f0[iu][iv] = b.mono(j, 0, v, d0);
        }
        _ => {
            let c0 = id.coeffs.c0 % p;
            if c0 == 0 {
                return reject(tag, "zero coefficient gives the zero map");
            }
            m.f0[iv][iu] = b.mono(0, j, u, c0);
            m.f0[iv][iv] = b.mono(a, a, v, b.neg(c0));
        }
    }
    Ok(m)
}

fn build_c1(b: &Builder, id: &CatalogMapId) -> Result<ChainMap, BuildError> {
    let tag = Tag::C1;
    let t = need(id.site.t, "t")?;
    let q = need(id.site.q, "q")?;
    let p = b.params.p();
    let (u, v, j, _a, _b) = b.member_data(tag, t)?;
    if j <= p {
        return reject(tag, format!("single-zone self-maps need span j > p (j={j})"));
    }
    if !(1..=p - 1).contains(&q) {
        return reject(tag, format!("diagonal power must satisfy 1 <= q <= p-1 (q={q})"));
    }
    let zone = b.zone(t);
    let flank = match zone {
        Some(ArcZone::SingleU) => u,
        Some(ArcZone::SingleV) => v,
        z => return reject(tag, format!("self-map acts on a single-zone member, got {z:?}")),
    };
    let c = b.comp(t);
    let mut m = ChainMap::zero(&c, &c);
    m.f0[0][0] = b.mono(q, q, flank, 1);
    m.f1 = Some(b.mono(q, q, t, 1));
    Ok(m)
}

fn build_c2(b: &Builder, id: &CatalogMapId) -> Result<ChainMap, BuildError> {
    let tag = Tag::C2;
    let t = need(id.site.t, "t")?;
    let q = need(id.site.q, "q")?;
    let p = b.params.p();
    let (u, v, j, a, bb) = b.member_data(tag, t)?;
    if b.zone(t) != Some(ArcZone::Double) {
        return reject(tag, "diagonal self-maps act on doubles");
    }
    if !(1..=p - 1).contains(&q) {
        return reject(tag, format!("diagonal power must satisfy 1 <= q <= p-1 (q={q})"));
    }
    let (d0, c0, h0) = (id.coeffs.d0 % p, id.coeffs.c0 % p, id.coeffs.h0 % p);
    if d0 != 0 && (q < bb || j > p - 1) {
        return reject(
            tag,
            format!("the upper corner term needs q >= b and j <= p-1 (q={q}, b={bb}, j={j})"),
        );
    }
    if c0 != 0 && (q < a || j > p - 1) {
        return reject(
            tag,
            format!("the lower corner term needs q >= a and j <= p-1 (q={q}, a={a}, j={j})"),
        );
    }
    let c = b.comp(t);
    let (iu, iv) = (u_slot(&c).unwrap(), v_slot(&c).unwrap());
    let mut m = ChainMap::zero(&c, &c);
    m.f0[iu][iu] = b.mono(q, q, u, fp::sub(p, h0, d0));
    if d0 != 0 {
        m.f0[iu][iv] = b.mono(q - bb + j, q - bb, v, d0);
    }
    if c0 != 0 {
        m.f0[iv][iu] = b.mono(q - a, q - a + j, u, c0);
    }
    m.f0[iv][iv] = b.mono(q, q, v, fp::sub(p, h0, c0));
    m.f1 = Some(b.mono(q, q, t, h0));
    if m.is_zero() {
        return reject(tag, "all coefficients vanish");
    }
    Ok(m)
}

fn build_c3(b: &Builder, id: &CatalogMapId) -> Result<ChainMap, BuildError> {
    let tag = Tag::C3;
    let t = need(id.site.t, "t")?;
    let tt = need(id.site.tt, "tt")?;
    let h = need(id.site.h, "h")?;
    let q = need(id.site.q, "q")?;
    let side = need_side(id.site.side)?;
    let p = b.params.p();
    let r = b.params.r();
    let (u, v, j, a, bb) = b.member_data(tag, t)?;
    let (tu, tv, tj, ta, tb) = b.member_data(tag, tt)?;
    if (u, v, j) != (tu, tv, tj) {
        return reject(tag, "both residues must lie in the same arc");
    }
    let s = (r - j) + h * r;
    if s > p - 1 {
        return reject(tag, format!("letter exponent s=(r-j)+h*r={s} exceeds p-1"));
    }
    if s + q > p - 1 {
        return reject(tag, format!("s+q={} exceeds p-1, the entry vanishes", s + q));
    }
    let src = b.comp(t);
    let tgt = b.comp(tt);
    let mut m = ChainMap::zero(&src, &tgt);
    match side {
        Side::V => {
            // y-letter entry from the source's lower summand into the
            // target's upper summand.
            if a > p - 1 {
                return reject(tag, "source needs its x-power summand (a <= p-1)");
            }
            if tb > p - 1 {
                return reject(tag, "target needs its y-power summand (b~ <= p-1)");
            }
            if q + tb + s < p {
                return reject(tag, format!("commutation needs q >= p - b~ - s (q={q})"));
            }
            if q >= a {
                return reject(tag, format!("q >= a makes the map homotopy-trivial (q={q}, a={a})"));
            }
            let e0 = id.coeffs.e0 % p;
            if e0 == 0 {
                return reject(tag, "zero coefficient gives the zero map");
            }
            let i = u_slot(&src).unwrap();
            let k = v_slot(&tgt).unwrap();
            m.f0[i][k] = b.mono(q, s + q, v, e0);
        }
        Side::U => {
            if bb > p - 1 {
                return reject(tag, "source needs its y-power summand (b <= p-1)");
            }
            if ta > p - 1 {
                return reject(tag, "target needs its x-power summand (a~ <= p-1)");
            }
            if q + ta + s < p {
                return reject(tag, format!("commutation needs q >= p - a~ - s (q={q})"));
            }
            if q >= bb {
                return reject(tag, format!("q >= b makes the map homotopy-trivial (q={q}, b={bb})"));
            }
            let f0c = id.coeffs.f0 % p;
            if f0c == 0 {
                return reject(tag, "zero coefficient gives the zero map");
            }
            let i = v_slot(&src).unwrap();
            let k = u_slot(&tgt).unwrap();
            m.f0[i][k] = b.mono(s + q, q, u, f0c);
        }
    }
    Ok(m)
}

fn build_d12(b: &Builder, id: &CatalogMapId) -> Result<ChainMap, BuildError> {
    let tag = id.tag;
    let t = need(id.site.t, "t")?;
    let p = b.params.p();
    let r = b.params.r();
    if r >= p {
        return reject(tag, format!("full-turn self-maps need r < p (r={r}, p={p})"));
    }
    let (u, v, _j, _a, _b) = b.member_data(tag, t)?;
    if b.zone(t) != Some(ArcZone::Double) {
        return reject(tag, "full-turn self-maps act on doubles");
    }
    let c = b.comp(t);
    let (iu, iv) = (u_slot(&c).unwrap(), v_slot(&c).unwrap());
    let mut m = ChainMap::zero(&c, &c);
    match tag {
        Tag::D1 => {
            m.f0[iu][iu] = b.mono(r, 0, u, 1);
            m.f0[iv][iv] = b.mono(r, 0, v, 1);
            m.f1 = Some(b.mono(r, 0, t, 1));
        }
        _ => {
            m.f0[iu][iu] = b.mono(0, r, u, 1);
            m.f0[iv][iv] = b.mono(0, r, v, 1);
            m.f1 = Some(b.mono(0, r, t, 1));
        }
    }
    Ok(m)
}

fn build_d3(b: &Builder, id: &CatalogMapId) -> Result<ChainMap, BuildError> {
    let tag = Tag::D3;
    let t = need(id.site.t, "t")?;
    let h = need(id.site.h, "h")?;
    let side = need_side(id.site.side)?;
    let p = b.params.p();
    let r = b.params.r();
    let (u, v, j, a, bb) = b.member_data(tag, t)?;
    if r != 2 * j || r >= p {
        return reject(tag, format!("half-turn self-maps need r = 2j < p (r={r}, j={j})"));
    }
    if h != (p - 1) / r || h == 0 {
        return reject(tag, format!("h must be maximal with h*r <= p-1 (h={h})"));
    }
    let hr = h * r;
    if b.zone(t) != Some(ArcZone::Double) {
        return reject(tag, "half-turn self-maps act on doubles");
    }
    let c = b.comp(t);
    let (iu, iv) = (u_slot(&c).unwrap(), v_slot(&c).unwrap());
    let mut m = ChainMap::zero(&c, &c);
    match side {
        Side::V => {
            if hr + bb < p {
                return reject(tag, format!("the y-side needs h*r + b >= p ({hr}+{bb})"));
            }
            let e0 = id.coeffs.e0 % p;
            if e0 == 0 {
                return reject(tag, "zero coefficient gives the zero map");
            }
            m.f0[iu][iv] = b.mono(a, hr - j + a, v, e0);
            m.f1 = Some(b.mono(0, hr, t, e0));
        }
        Side::U => {
            if hr + a < p {
                return reject(tag, format!("the x-side needs h*r + a >= p ({hr}+{a})"));
            }
            let f0c = id.coeffs.f0 % p;
            if f0c == 0 {
                return reject(tag, "zero coefficient gives the zero map");
            }
            m.f0[iv][iu] = b.mono(hr - j + bb, bb, u, f0c);
            m.f1 = Some(b.mono(hr, 0, t, f0c));
        }
    }
    Ok(m)
}

fn build_e1(b: &Builder, id: &CatalogMapId) -> Result<ChainMap, BuildError> {
    let tag = Tag::E1;
    let t = need(id.site.t, "t")?;
    let tt = need(id.site.tt, "tt")?;
    let side = need_side(id.site.side)?;
    let p = b.params.p();
    let (u, v, j, a, bb) = b.member_data(tag, t)?;
    let (tu2, tv2, tj, ta, tb) = b.member_data(tag, tt)?;
    if (u, v, j) != (tu2, tv2, tj) {
        return reject(tag, "both residues must lie in the same arc");
    }
    if j <= p {
        return reject(tag, format!("single-zone degree-1 maps need span j > p (j={j})"));
    }
    let src = b.comp(t);
    let tgt = b.comp(tt);
    let mut m = ChainMap::zero(&src, &tgt);
    match side {
        Side::U => {
            if b.zone(t) != Some(ArcZone::SingleU) || b.zone(tt) != Some(ArcZone::SingleU) {
                return reject(tag, "the x-side connects two u-side singles");
            }
            if a >= ta {
                return reject(tag, format!("the x-side runs outward (a={a} < a~={ta} required)"));
            }
            m.f1 = Some(b.mono(ta - a + (p - ta), p - ta, tt, 1));
        }
        Side::V => {
            if b.zone(t) != Some(ArcZone::SingleV) || b.zone(tt) != Some(ArcZone::SingleV) {
                return reject(tag, "the y-side connects two v-side singles");
            }
            if bb >= tb {
                return reject(tag, format!("the y-side runs outward (b={bb} < b~={tb} required)"));
            }
            m.f1 = Some(b.mono(p - tb, tb - bb + (p - tb), tt, 1));
        }
    }
    Ok(m)
}

fn build_e2(b: &Builder, id: &CatalogMapId) -> Result<ChainMap, BuildError> {
    let tag = Tag::E2;
    let t = need(id.site.t, "t")?;
    let w = need(id.site.w, "w")?;
    let side = need_side(id.site.side)?;
    let p = b.params.p();
    let (u, v, j, a, bb) = b.member_data(tag, t)?;
    if j <= p {
        return reject(tag, format!("stalk-to-single maps need span j > p (j={j})"));
    }
    if !b.dec.contains(w) {
        return reject(tag, format!("source {w} must be a selected residue"));
    }
    let src = b.comp(w);
    let tgt = b.comp(t);
    let mut m = ChainMap::zero(&src, &tgt);
    match side {
        Side::U => {
            if b.zone(t) != Some(ArcZone::SingleU) {
                return reject(tag, "the x-side lands on a u-side single");
            }
            let back = b.params.ovr_sub(u, w);
            let iv = b.dec.interval_of(u).unwrap();
            if !b.dec.intervals()[iv].contains(&w) {
                return reject(tag, "source must lie in the selected interval ending at u");
            }
            let dist = a + back;
            if dist > p {
                return reject(tag, format!("reach ovr(t-w)={dist} exceeds p"));
            }
            m.f0[0][0] = b.mono(back + (p - dist), p - dist, u, 1);
        }
        Side::V => {
            if b.zone(t) != Some(ArcZone::SingleV) {
                return reject(tag, "the y-side lands on a v-side single");
            }
            let fwd = b.params.ovr_sub(w, v);
            let iv = b.dec.interval_of(v).unwrap();
            if !b.dec.intervals()[iv].contains(&w) {
                return reject(tag, "source must lie in the selected interval starting at v");
            }
            let dist = bb + fwd;
            if dist > p {
                return reject(tag, format!("reach ovr(w-t)={dist} exceeds p"));
            }
            m.f0[0][0] = b.mono(p - dist, fwd + (p - dist), v, 1);
        }
    }
    Ok(m)
}

fn build_e3(b: &Builder, id: &CatalogMapId) -> Result<ChainMap, BuildError> {
    let tag = Tag::E3;
    let t = need(id.site.t, "t")?;
    let tt = need(id.site.tt, "tt")?;
    let h = need(id.site.h, "h")?;
    let side = need_side(id.site.side)?;
    let p = b.params.p();
    let r = b.params.r();
    let (u, v, j, _a, _b) = b.member_data(tag, t)?;
    let hr = h * r;
    if hr > p - 1 {
        return reject(tag, format!("letter power must stay below p (h*r={hr})"));
    }
    if b.dec.contains(tt) {
        // Projection onto a flanking stalk.  A stalk target leaves nothing
        // for the power to collide with, so any h with a nonzero monomial
        // is allowed, including the plain identity at h = 0.
        let src = b.comp(t);
        let tgt = b.comp(tt);
        let mut m = ChainMap::zero(&src, &tgt);
        match side {
            Side::U => {
                if tt != u {
                    return reject(tag, format!("the x-side projects onto the lower flank {u}"));
                }
                let Some(i) = u_slot(&src) else {
                    return reject(tag, "the source needs its x-power summand");
                };
                m.f0[i][0] = b.mono(hr, 0, u, 1);
            }
            Side::V => {
                if tt != v {
                    return reject(tag, format!("the y-side projects onto the upper flank {v}"));
                }
                let Some(i) = v_slot(&src) else {
                    return reject(tag, "the source needs its y-power summand");
                };
                m.f0[i][0] = b.mono(0, hr, v, 1);
            }
        }
        return Ok(m);
    }
    let (tu2, tv2, tj, ta, tb) = b.member_data(tag, tt)?;
    if (u, v, j) != (tu2, tv2, tj) {
        return reject(tag, "both residues must lie in the same arc");
    }
    if h == 0 {
        return reject(tag, "member-to-member powers need h >= 1");
    }
    let src = b.comp(t);
    let tgt = b.comp(tt);
    let mut m = ChainMap::zero(&src, &tgt);
    match side {
        Side::U => {
            if hr + ta < p {
                return reject(tag, format!("the x-side needs h*r + a~ >= p ({hr}+{ta})"));
            }
            let (Some(i), Some(k)) = (u_slot(&src), u_slot(&tgt)) else {
                return reject(tag, "both components need their x-power summand");
            };
            m.f0[i][k] = b.mono(hr, 0, u, 1);
        }
        Side::V => {
            if hr + tb < p {
                return reject(tag, format!("the y-side needs h*r + b~ >= p ({hr}+{tb})"));
            }
            let (Some(i), Some(k)) = (v_slot(&src), v_slot(&tgt)) else {
                return reject(tag, "both components need their y-power summand");
            };
            m.f0[i][k] = b.mono(0, hr, v, 1);
        }
    }
    Ok(m)
}

fn build_e4(b: &Builder, id: &CatalogMapId) -> Result<ChainMap, BuildError> {
    let tag = Tag::E4;
    let t = need(id.site.t, "t")?;
    let w = need(id.site.w, "w")?;
    let h = need(id.site.h, "h")?;
    let side = need_side(id.site.side)?;
    let q = id.site.q.unwrap_or(0);
    let p = b.params.p();
    let r = b.params.r();
    let (u, v, _j, a, bb) = b.member_data(tag, t)?;
    if !b.dec.contains(w) {
        return reject(tag, format!("source stalk {w} must be a selected residue"));
    }
    let hr = h * r;
    let src = b.comp(w);
    let tgt = b.comp(t);
    let mut m = ChainMap::zero(&src, &tgt);
    match side {
        Side::U => {
            let off = b.params.ovr_sub(u, w) + hr;
            if off + q > p - 1 || q > p - 1 {
                return reject(tag, format!("the monomial x^{}y^{q} vanishes", off + q));
            }
            if off + q + a < p {
                return reject(
                    tag,
                    format!("the x-side must be killed by the differential ({off}+{q}+{a} < {p})"),
                );
            }
            let Some(k) = u_slot(&tgt) else {
                return reject(tag, "target needs its x-power summand");
            };
            m.f0[0][k] = b.mono(off + q, q, u, 1);
        }
        Side::V => {
            let off = b.params.ovr_sub(w, v) + hr;
            if off + q > p - 1 || q > p - 1 {
                return reject(tag, format!("the monomial x^{q}y^{} vanishes", off + q));
            }
            if off + q + bb < p {
                return reject(
                    tag,
                    format!("the y-side must be killed by the differential ({off}+{q}+{bb} < {p})"),
                );
            }
            let Some(k) = v_slot(&tgt) else {
                return reject(tag, "target needs its y-power summand");
            };
            m.f0[0][k] = b.mono(q, off + q, v, 1);
        }
    }
    Ok(m)
}

fn build_e5(b: &Builder, id: &CatalogMapId) -> Result<ChainMap, BuildError> {
    let tag = Tag::E5;
    let t = need(id.site.t, "t")?;
    let tt = need(id.site.tt, "tt")?;
    let side = need_side(id.site.side)?;
    let p = b.params.p();
    let r = b.params.r();
    if b.dec.m() < 2 {
        return reject(tag, "bridges need at least two selected intervals");
    }
    if r >= p {
        return reject(tag, format!("bridges need r < p (r={r}, p={p})"));
    }
    if !b.dec.contains(t) || !b.dec.contains(tt) {
        return reject(tag, "bridges connect selected residues");
    }
    let s = match side {
        Side::U => b.params.ovr_sub(tt, t),
        Side::V => b.params.ovr_sub(t, tt),
    };
    if s == 0 {
        return reject(tag, "a one-point interval has no bridge (the self-step covers it)");
    }
    // The two endpoints must be the first and last points of one interval:
    // the x-bridge runs last -> first, the y-bridge first -> last.
    let (first, last) = match side {
        Side::U => (tt, t),
        Side::V => (t, tt),
    };
    let ok = b
        .dec
        .intervals()
        .iter()
        .any(|iv| iv.first() == Some(&first) && iv.last() == Some(&last));
    if !ok {
        return reject(tag, "endpoints must be the first and last points of one interval");
    }
    let src = b.comp(t);
    let tgt = b.comp(tt);
    let mut m = ChainMap::zero(&src, &tgt);
    m.f0[0][0] = match side {
        Side::U => b.mono(s, 0, tt, 1),
        Side::V => b.mono(0, s, tt, 1),
    };
    Ok(m)
}

/// All catalog ids attached to one arc: the maps inside the arc and to its
/// flanking stalks, the stalk steps of the selected interval ending at the
/// arc's lower flank, and the bridge across the interval starting at its
/// upper flank.
pub fn applicable_ids(dec: &ArcDecomposition, arc_index: usize) -> Vec<CatalogMapId> {
    let params = *dec.params();
    let p = params.p();
    let r = params.r();
    let pm1 = p - 1;
    let arc = &dec.arcs()[arc_index];
    let (u, v, j) = (arc.u, arc.v, arc.j);
    let at = |d: u64| params.ovr(u as i64 + d as i64);
    let ab = |t: u64| dec.ab(t).unwrap();
    let zone = |t: u64| dec.zone(t).unwrap();
    let mut ids = Vec::new();
    let side = |s: Side| Some(s);

    // Boundary maps from the edge members onto the flanking stalks.
    ids.push(CatalogMapId::new(
        Tag::Adjacent,
        Site { t: Some(at(1)), tt: Some(u), side: side(Side::U), ..Site::default() },
    ));
    ids.push(CatalogMapId::new(
        Tag::Adjacent,
        Site { t: Some(at(j - 1)), tt: Some(v), side: side(Side::V), ..Site::default() },
    ));

    // One-step maps between consecutive members; the double-double and
    // zone-boundary backward/forward steps carry their own tags.
    for a in 1..j - 1 {
        let (t, t2) = (at(a), at(a + 1));
        let (zs, zt) = (zone(t), zone(t2));
        use ArcZone::*;
        let fwd_tag = match (zs, zt) {
            (Double, Double) => Tag::Xi1,
            (Double, SingleV) => Tag::NuV,
            _ => Tag::Adjacent,
        };
        ids.push(CatalogMapId::new(
            fwd_tag,
            Site { t: Some(t), tt: Some(t2), ..Site::default() },
        ));
        let bwd_tag = match (zt, zs) {
            (Double, Double) => Tag::Xi2,
            (Double, SingleU) => Tag::MuU,
            _ => Tag::Adjacent,
        };
        ids.push(CatalogMapId::new(
            bwd_tag,
            Site { t: Some(t2), tt: Some(t), ..Site::default() },
        ));
    }

    // Jump maps between the flanking stalks (short arcs only).
    if j <= pm1 {
        ids.push(CatalogMapId::new(
            Tag::Adjacent,
            Site { t: Some(u), tt: Some(v), side: side(Side::U), ..Site::default() },
        ));
        ids.push(CatalogMapId::new(
            Tag::Adjacent,
            Site { t: Some(v), tt: Some(u), side: side(Side::V), ..Site::default() },
        ));
    }

    // Long arrows from the flanking stalks to the member at distance p-1.
    if j >= p {
        ids.push(CatalogMapId::new(
            Tag::Adjacent,
            Site { t: Some(u), tt: Some(at(pm1)), side: side(Side::U), ..Site::default() },
        ));
        ids.push(CatalogMapId::new(
            Tag::Adjacent,
            Site { t: Some(v), tt: Some(at(j - pm1)), side: side(Side::V), ..Site::default() },
        ));
    }

    // Stalk steps along the selected interval ending at u.
    let interval = &dec.intervals()[arc_index];
    if interval.len() == 1 {
        let w = interval[0];
        ids.push(CatalogMapId::new(
            Tag::Gamma,
            Site { t: Some(w), tt: Some(w), ..Site::default() },
        ));
    } else {
        for pair in interval.windows(2) {
            ids.push(CatalogMapId::new(
                Tag::Gamma,
                Site { t: Some(pair[0]), tt: Some(pair[1]), ..Site::default() },
            ));
            ids.push(CatalogMapId::new(
                Tag::Gamma,
                Site { t: Some(pair[1]), tt: Some(pair[0]), ..Site::default() },
            ));
        }
    }

    // Corner stalk maps (short arcs only).
    if j <= pm1 {
        ids.push(CatalogMapId::new(
            Tag::EpsilonU,
            Site { t: Some(u), tt: Some(at(j - 1)), ..Site::default() },
        ));
        ids.push(CatalogMapId::new(
            Tag::EpsilonV,
            Site { t: Some(v), tt: Some(at(1)), ..Site::default() },
        ));
    }

    // Corner self-maps on doubles (short arcs only).
    if j <= pm1 {
        for a in 1..j {
            let t = at(a);
            ids.push(CatalogMapId::new(Tag::B1, Site { t: Some(t), ..Site::default() }));
            ids.push(CatalogMapId::new(Tag::B2, Site { t: Some(t), ..Site::default() }));
        }
    }

    // Diagonal self-maps.
    for a in 1..j {
        let t = at(a);
        match zone(t) {
            ArcZone::SingleU | ArcZone::SingleV => {
                if j > p {
                    for q in 1..=pm1 {
                        ids.push(CatalogMapId::new(
                            Tag::C1,
                            Site {
                                t: Some(t),
                                q: Some(q),
                                side: side(if zone(t) == ArcZone::SingleU { Side::U } else { Side::V }),
                                ..Site::default()
                            },
                        ));
                    }
                }
            }
            ArcZone::Double => {
                for q in 1..=pm1 {
                    ids.push(CatalogMapId {
                        tag: Tag::C2,
                        site: Site { t: Some(t), q: Some(q), ..Site::default() },
                        coeffs: Coeffs { d0: 0, c0: 0, ..Coeffs::default() },
                    });
                }
            }
            ArcZone::Gap => {}
        }
    }

    // Cross-zone letter-power maps.
    for a in 1..j {
        let t = at(a);
        let (sa, sb) = ab(t);
        for a2 in 1..j {
            let t2 = at(a2);
            let (ta, tb) = ab(t2);
            let mut h = 0;
            loop {
                let s = (r - j) + h * r;
                if s > pm1 {
                    break;
                }
                if sa <= pm1 && tb <= pm1 && sa >= 1 {
                    let lo = (p as i64 - tb as i64 - s as i64).max(0) as u64;
                    let hi = (pm1 - s).min(sa - 1);
                    let mut q = lo;
                    while q <= hi {
                        ids.push(CatalogMapId::new(
                            Tag::C3,
                            Site {
                                t: Some(t),
                                tt: Some(t2),
                                h: Some(h),
                                q: Some(q),
                                side: side(Side::V),
                                ..Site::default()
                            },
                        ));
                        q += 1;
                    }
                }
                if sb <= pm1 && ta <= pm1 && sb >= 1 {
                    let lo = (p as i64 - ta as i64 - s as i64).max(0) as u64;
                    let hi = (pm1 - s).min(sb - 1);
                    let mut q = lo;
                    while q <= hi {
                        ids.push(CatalogMapId::new(
                            Tag::C3,
                            Site {
                                t: Some(t),
                                tt: Some(t2),
                                h: Some(h),
                                q: Some(q),
                                side: side(Side::U),
                                ..Site::default()
                            },
                        ));
                        q += 1;
                    }
                }
                h += 1;
            }
        }
    }

    // Full-turn self-maps on doubles.
    if r < p {
        for a in 1..j {
            let t = at(a);
            if zone(t) == ArcZone::Double {
                ids.push(CatalogMapId::new(Tag::D1, Site { t: Some(t), ..Site::default() }));
                ids.push(CatalogMapId::new(Tag::D2, Site { t: Some(t), ..Site::default() }));
            }
        }
    }

    // Half-turn self-maps on doubles.
    if r == 2 * j && r < p {
        let h = pm1 / r;
        for a in 1..j {
            let t = at(a);
            if zone(t) != ArcZone::Double {
                continue;
            }
            let (sa, sb) = ab(t);
            if h * r + sb >= p {
                ids.push(CatalogMapId::new(
                    Tag::D3,
                    Site { t: Some(t), h: Some(h), side: side(Side::V), ..Site::default() },
                ));
            }
            if h * r + sa >= p {
                ids.push(CatalogMapId::new(
                    Tag::D3,
                    Site { t: Some(t), h: Some(h), side: side(Side::U), ..Site::default() },
                ));
            }
        }
    }

    // Degree-1 maps between singles on the same side.
    if j > p {
        let reach = (j - p).min(pm1);
        for a in 1..=reach {
            for a2 in a + 1..=reach {
                ids.push(CatalogMapId::new(
                    Tag::E1,
                    Site { t: Some(at(a)), tt: Some(at(a2)), side: side(Side::U), ..Site::default() },
                ));
                ids.push(CatalogMapId::new(
                    Tag::E1,
                    Site {
                        t: Some(at(j - a)),
                        tt: Some(at(j - a2)),
                        side: side(Side::V),
                        ..Site::default()
                    },
                ));
            }
        }
    }

    // Stalk-to-single maps.
    if j > p {
        let reach = (j - p).min(pm1);
        for a in 1..=reach {
            let t = at(a);
            for (step, &w) in dec.intervals()[arc_index].iter().rev().enumerate() {
                if a + step as u64 > p {
                    break;
                }
                ids.push(CatalogMapId::new(
                    Tag::E2,
                    Site { t: Some(t), w: Some(w), side: side(Side::U), ..Site::default() },
                ));
            }
            let t = at(j - a);
            let next_interval = &dec.intervals()[(arc_index + 1) % dec.m()];
            for (step, &w) in next_interval.iter().enumerate() {
                if a + step as u64 > p {
                    break;
                }
                ids.push(CatalogMapId::new(
                    Tag::E2,
                    Site { t: Some(t), w: Some(w), side: side(Side::V), ..Site::default() },
                ));
            }
        }
    }

    // Letter-power maps between doubles.
    {
        let doubles: Vec<u64> = (1..j).map(at).filter(|&t| zone(t) == ArcZone::Double).collect();
        let mut h = 1;
        while h * r <= pm1 {
            let hr = h * r;
            for &t in &doubles {
                for &t2 in &doubles {
                    let (ta, tb) = ab(t2);
                    if hr + ta >= p {
                        ids.push(CatalogMapId::new(
                            Tag::E3,
                            Site { t: Some(t), tt: Some(t2), h: Some(h), side: side(Side::U), ..Site::default() },
                        ));
                    }
                    if hr + tb >= p {
                        ids.push(CatalogMapId::new(
                            Tag::E3,
                            Site { t: Some(t), tt: Some(t2), h: Some(h), side: side(Side::V), ..Site::default() },
                        ));
                    }
                }
            }
            h += 1;
        }
    }

    // Projections from deep members onto the flanking stalks.  The edge
    // members (distance one) already carry their boundary maps above.
    for a in 1..j {
        let t = at(a);
        let (sa, sb) = ab(t);
        let z = zone(t);
        if sa >= 2 && matches!(z, ArcZone::Double | ArcZone::SingleU) {
            ids.push(CatalogMapId::new(
                Tag::E3,
                Site { t: Some(t), tt: Some(u), h: Some(0), side: side(Side::U), ..Site::default() },
            ));
        }
        if sb >= 2 && matches!(z, ArcZone::Double | ArcZone::SingleV) {
            ids.push(CatalogMapId::new(
                Tag::E3,
                Site { t: Some(t), tt: Some(v), h: Some(0), side: side(Side::V), ..Site::default() },
            ));
        }
    }

    // Feedback maps from the selected stalks into the members.  Each letter
    // power that is not yet killed by the differential gets the minimal
    // two-letter pad that kills it.  Every selected residue feeds in: the
    // members only ever project onto their own flanks, but pre-composing a
    // feedback with stalk steps can die by truncation, so the instances
    // from the interior stalks are irreducible.
    {
        let sources: Vec<u64> = dec.i0().to_vec();
        for a in 1..j {
            let t = at(a);
            let (sa, sb) = ab(t);
            let z = zone(t);
            if matches!(z, ArcZone::Double | ArcZone::SingleU) {
                for &w in &sources {
                    let base = params.ovr_sub(u, w);
                    let mut h = 0;
                    loop {
                        let off = base + h * r;
                        if off > pm1 {
                            break;
                        }
                        let q = p.saturating_sub(off + sa);
                        // The minimal pad into the widest member is already
                        // listed as the long arrow above.
                        if !(w == u && h == 0 && sa == pm1 && j >= p) {
                            ids.push(CatalogMapId::new(
                                Tag::E4,
                                Site {
                                    t: Some(t),
                                    w: Some(w),
                                    h: Some(h),
                                    q: Some(q),
                                    side: side(Side::U),
                                    ..Site::default()
                                },
                            ));
                        }
                        h += 1;
                    }
                }
            }
            if matches!(z, ArcZone::Double | ArcZone::SingleV) {
                for &w in &sources {
                    let base = params.ovr_sub(w, v);
                    let mut h = 0;
                    loop {
                        let off = base + h * r;
                        if off > pm1 {
                            break;
                        }
                        let q = p.saturating_sub(off + sb);
                        if !(w == v && h == 0 && sb == pm1 && j >= p) {
                            ids.push(CatalogMapId::new(
                                Tag::E4,
                                Site {
                                    t: Some(t),
                                    w: Some(w),
                                    h: Some(h),
                                    q: Some(q),
                                    side: side(Side::V),
                                    ..Site::default()
                                },
                            ));
                        }
                        h += 1;
                    }
                }
            }
        }
    }

    // Bridges across the selected interval starting at v (several
    // intervals, small r only).
    if dec.m() > 1 && r < p {
        let next_interval = &dec.intervals()[(arc_index + 1) % dec.m()];
        let first = *next_interval.first().unwrap();
        let last = *next_interval.last().unwrap();
        let s = params.ovr_sub(first, last);
        if s > 0 {
            ids.push(CatalogMapId::new(
                Tag::E5,
                Site { t: Some(last), tt: Some(first), side: side(Side::U), ..Site::default() },
            ));
            ids.push(CatalogMapId::new(
                Tag::E5,
                Site { t: Some(first), tt: Some(last), side: side(Side::V), ..Site::default() },
            ));
        }
    }

    ids
}

/// Catalog ids of every arc, in arc order.
pub fn all_ids(dec: &ArcDecomposition) -> Vec<CatalogMapId> {
    (0..dec.m()).flat_map(|i| applicable_ids(dec, i)).collect()
}

/// The mirrored id under the symmetry swapping the two letters and
/// negating residues.  Building the mirrored id over the mirrored
/// selection yields the mirrored chain map.
pub fn dual_id(params: &BlockParams, id: &CatalogMapId) -> CatalogMapId {
    let n = |x: Option<u64>| x.map(|t| params.ovr(-(t as i64)));
    let tag = match id.tag {
        Tag::EpsilonU => Tag::EpsilonV,
        Tag::EpsilonV => Tag::EpsilonU,
        Tag::MuU => Tag::NuV,
        Tag::NuV => Tag::MuU,
        Tag::Xi1 => Tag::Xi2,
        Tag::Xi2 => Tag::Xi1,
        Tag::B1 => Tag::B2,
        Tag::B2 => Tag::B1,
        Tag::D1 => Tag::D2,
        Tag::D2 => Tag::D1,
        other => other,
    };
    CatalogMapId {
        tag,
        site: Site {
            t: n(id.site.t),
            tt: n(id.site.tt),
            w: n(id.site.w),
            side: id.site.side.map(|s| match s {
                Side::U => Side::V,
                Side::V => Side::U,
            }),
            h: id.site.h,
            q: id.site.q,
        },
        coeffs: Coeffs {
            d0: id.coeffs.c0,
            c0: id.coeffs.d0,
            e0: id.coeffs.f0,
            f0: id.coeffs.e0,
            h0: id.coeffs.h0,
        },
    }
}

/// One measured diagonal-power self-map: the two candidate nullity
/// thresholds (distance from the flank toward the member, and the reverse
/// distance) against the observed nullity.
#[derive(Debug, Clone)]
pub struct C1Finding {
    pub id: CatalogMapId,
    pub q: u64,
    pub threshold_src_dist: u64,
    pub threshold_alt: u64,
    pub is_null: bool,
}

/// One measured cancelling corner sum.
#[derive(Debug, Clone)]
pub struct BSumFinding {
    pub t: u64,
    pub a: u64,
    pub b: u64,
    pub is_null: bool,
}

/// Findings of [`verify_catalog`].
#[derive(Debug, Clone, Default)]
pub struct CatalogReport {
    pub total_instances: usize,
    pub chain_failures: Vec<CatalogMapId>,
    pub unexpected_null: Vec<CatalogMapId>,
    pub unexpected_nonnull: Vec<CatalogMapId>,
    pub c1_findings: Vec<C1Finding>,
    /// Nullity matches `q >= distance from the flank to the member`.
    pub c1_src_rule_holds: bool,
    /// Nullity matches `q >= reverse distance` (the competing reading).
    pub c1_alt_rule_holds: bool,
    pub b_sum: Vec<BSumFinding>,
    /// Cancelling corner sums are null exactly when the two distances agree.
    pub b_sum_matches_equal_distance_rule: bool,
    pub c2_combined_checked: usize,
    pub c2_combined_failures: Vec<CatalogMapId>,
    pub d3_exclusions_verified: usize,
}

impl CatalogReport {
    pub fn ok(&self) -> bool {
        self.chain_failures.is_empty()
            && self.unexpected_null.is_empty()
            && self.unexpected_nonnull.is_empty()
            && self.c1_src_rule_holds
            && self.b_sum_matches_equal_distance_rule
            && self.c2_combined_failures.is_empty()
    }
}

/// Caches the linear-algebra spaces per component pair while verifying.
struct NullOracle<'a> {
    dec: &'a ArcDecomposition,
    spaces: HashMap<(u64, u64), PairSpace>,
}

impl<'a> NullOracle<'a> {
    fn new(dec: &'a ArcDecomposition) -> NullOracle<'a> {
        NullOracle {
            dec,
            spaces: HashMap::new(),
        }
    }

    fn is_null(&mut self, map: &ChainMap) -> bool {
        assert!(map.is_chain_map());
        let key = (map.src.index, map.tgt.index);
        let dec = self.dec;
        let space = self.spaces.entry(key).or_insert_with(|| {
            PairSpace::new(
                &tilting_component(dec, key.0),
                &tilting_component(dec, key.1),
            )
        });
        space.null.contains(&space.layout.flatten(map))
    }
}

/// Builds every applicable instance and measures commutation and nullity,
/// including the documented homotopy-trivial combinations.
pub fn verify_catalog(params: &BlockParams, i0: &[u64]) -> Result<CatalogReport, crate::tilt::I0Error> {
    let dec = ArcDecomposition::new(params, i0)?;
    let p = params.p();
    let mut report = CatalogReport {
        c1_src_rule_holds: true,
        c1_alt_rule_holds: true,
        b_sum_matches_equal_distance_rule: true,
        ..CatalogReport::default()
    };
    let mut oracle = NullOracle::new(&dec);

    for id in all_ids(&dec) {
        let inst = build_map(&dec, &id).expect("enumerated ids are applicable");
        report.total_instances += 1;
        if !inst.map.is_chain_map() {
            report.chain_failures.push(id);
            continue;
        }
        let is_null = oracle.is_null(&inst.map);
        let expected_null = match id.tag {
            Tag::C1 => {
                let t = id.site.t.unwrap();
                let q = id.site.q.unwrap();
                let (a, b) = dec.ab(t).unwrap();
                let (src_dist, alt) = match id.site.side.unwrap() {
                    Side::U => (a, params.ovr_sub(dec.uv(t).unwrap().0, t)),
                    Side::V => (b, params.ovr_sub(t, dec.uv(t).unwrap().1)),
                };
                report.c1_src_rule_holds &= is_null == (q >= src_dist);
                report.c1_alt_rule_holds &= is_null == (q >= alt);
                report.c1_findings.push(C1Finding {
                    id,
                    q,
                    threshold_src_dist: src_dist,
                    threshold_alt: alt,
                    is_null,
                });
                q >= src_dist
            }
            _ => false,
        };
        match (is_null, expected_null) {
            (true, false) => report.unexpected_null.push(id),
            (false, true) => report.unexpected_nonnull.push(id),
            _ => {}
        }
    }

    // Cancelling corner sums: null exactly when the two distances agree.
    for arc in dec.arcs() {
        if arc.j > p - 1 {
            continue;
        }
        for &t in &arc.members {
            if dec.zone(t) != Some(ArcZone::Double) {
                continue;
            }
            let (a, b) = dec.ab(t).unwrap();
            let b1 = build_map(&dec, &CatalogMapId::new(Tag::B1, Site { t: Some(t), ..Site::default() })).unwrap();
            let b2 = build_map(
                &dec,
                &CatalogMapId {
                    tag: Tag::B2,
                    site: Site { t: Some(t), ..Site::default() },
                    coeffs: Coeffs { c0: p - 1, ..Coeffs::default() },
                },
            )
            .unwrap();
            let sum = b1.map.add(&b2.map);
            let is_null = oracle.is_null(&sum);
            report.b_sum_matches_equal_distance_rule &= is_null == (a == b);
            report.b_sum.push(BSumFinding { t, a, b, is_null });
        }
    }

    // Combined diagonal self-maps: null exactly when the double-summand
    // coefficient equals the sum of the corner coefficients.
    for arc in dec.arcs() {
        if arc.j > p - 1 {
            continue;
        }
        for &t in &arc.members {
            if dec.zone(t) != Some(ArcZone::Double) {
                continue;
            }
            let (a, b) = dec.ab(t).unwrap();
            for q in 1..=p - 1 {
                let d0 = if q >= b { 1 } else { 0 };
                let c0 = if q >= a { 1 } else { 0 };
                if d0 == 0 && c0 == 0 {
                    continue;
                }
                for (h0, expect_null) in [(fp::add(p, d0, c0), true), (fp::add(p, fp::add(p, d0, c0), 1), false)] {
                    let id = CatalogMapId {
                        tag: Tag::C2,
                        site: Site { t: Some(t), q: Some(q), ..Site::default() },
                        coeffs: Coeffs { d0, c0, h0, ..Coeffs::default() },
                    };
                    let inst = build_map(&dec, &id).unwrap();
                    report.c2_combined_checked += 1;
                    if oracle.is_null(&inst.map) != expect_null {
                        report.c2_combined_failures.push(id);
                    }
                }
            }
        }
    }

    // The excluded half-turn instances really fail commutation.
    if params.r() < p {
        let h = (p - 1) / params.r();
        let hr = h * params.r();
        for arc in dec.arcs() {
            if params.r() != 2 * arc.j {
                continue;
            }
            let j = arc.j;
            for &t in &arc.members {
                if dec.zone(t) != Some(ArcZone::Double) {
                    continue;
                }
                let (a, b) = dec.ab(t).unwrap();
                let c = tilting_component(&dec, t);
                let (iu, iv) = (u_slot(&c).unwrap(), v_slot(&c).unwrap());
                if hr + a < p {
                    let mut m = ChainMap::zero(&c, &c);
                    m.f0[iv][iu] = Element::monomial(params, (hr - j + b) as u32, b as u32, arc.u, 1);
                    m.f1 = Some(Element::monomial(params, hr as u32, 0, t, 1));
                    assert!(!m.is_chain_map(), "excluded x-side half-turn instance must not commute");
                    report.d3_exclusions_verified += 1;
                }
                if hr + b < p {
                    let mut m = ChainMap::zero(&c, &c);
                    m.f0[iu][iv] = Element::monomial(params, a as u32, (hr - j + a) as u32, arc.v, 1);
                    m.f1 = Some(Element::monomial(params, 0, hr as u32, t, 1));
                    assert!(!m.is_chain_map(), "excluded y-side half-turn instance must not commute");
                    report.d3_exclusions_verified += 1;
                }
            }
        }
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tilt::is_null_homotopic;

    fn params(p: u64, r: u64) -> BlockParams {
        BlockParams::new(p, r).expect("valid parameters")
    }

    fn dec(p: u64, r: u64, i0: &[u64]) -> ArcDecomposition {
        ArcDecomposition::new(&params(p, r), i0).expect("valid selection")
    }

    fn has(ids: &[CatalogMapId], tag: Tag, f: impl Fn(&Site) -> bool) -> bool {
        ids.iter().any(|id| id.tag == tag && f(&id.site))
    }

    #[test]
    fn listing_for_the_p5_r4_example() {
        let d = dec(5, 4, &[0, 1, 3]);
        let ids = all_ids(&d);
        assert_eq!(ids.len(), 30);
        assert_eq!(ids.iter().filter(|i| i.tag == Tag::E4).count(), 8);
        // Feedbacks come from every selected stalk, the interior one included.
        assert!(has(&ids, Tag::E4, |s| {
            s.t == Some(2) && s.w == Some(0) && s.side == Some(Side::U) && s.q == Some(3)
        }));
        assert!(has(&ids, Tag::E4, |s| {
            s.t == Some(2) && s.w == Some(0) && s.side == Some(Side::V) && s.q == Some(3)
        }));
        // Boundary projections, corner stalk maps, letter-power maps.
        assert!(has(&ids, Tag::Adjacent, |s| s.t == Some(2) && s.tt == Some(1)));
        assert!(has(&ids, Tag::Adjacent, |s| s.t == Some(2) && s.tt == Some(3)));
        assert!(has(&ids, Tag::EpsilonU, |s| s.t == Some(1) && s.tt == Some(2)));
        assert!(has(&ids, Tag::EpsilonV, |s| s.t == Some(3) && s.tt == Some(2)));
        assert!(has(&ids, Tag::Adjacent, |s| s.t == Some(1) && s.tt == Some(3) && s.side == Some(Side::U)));
        assert!(has(&ids, Tag::Adjacent, |s| s.t == Some(3) && s.tt == Some(1) && s.side == Some(Side::V)));
        assert!(has(&ids, Tag::D1, |s| s.t == Some(2)));
        assert!(has(&ids, Tag::D2, |s| s.t == Some(2)));
        assert!(has(&ids, Tag::D3, |s| s.t == Some(2) && s.side == Some(Side::U)));
        assert!(has(&ids, Tag::D3, |s| s.t == Some(2) && s.side == Some(Side::V)));
        assert!(has(&ids, Tag::E4, |s| s.t == Some(2) && s.side == Some(Side::U)));
        assert!(has(&ids, Tag::E4, |s| s.t == Some(2) && s.side == Some(Side::V)));
        assert_eq!(ids.iter().filter(|i| i.tag == Tag::C2).count(), 4);
        assert_eq!(ids.iter().filter(|i| i.tag == Tag::Gamma).count(), 4);
        assert_eq!(ids.iter().filter(|i| i.tag == Tag::E3).count(), 2);
        assert_eq!(ids.iter().filter(|i| i.tag == Tag::B1).count(), 1);
        // No single-zone families on a short arc, no cross-zone maps here.
        for tag in [Tag::C1, Tag::C3, Tag::E1, Tag::E2, Tag::MuU, Tag::NuV, Tag::Xi1, Tag::Xi2, Tag::E5] {
            assert_eq!(ids.iter().filter(|i| i.tag == tag).count(), 0, "{tag:?}");
        }
    }

    #[test]
    fn known_maps_of_the_p5_r4_example() {
        let pr = params(5, 4);
        let d = dec(5, 4, &[0, 1, 3]);
        let eps1 = build_map(&d, &CatalogMapId::new(Tag::EpsilonU, Site { t: Some(1), tt: Some(2), ..Site::default() })).unwrap();
        assert_eq!(eps1.map.f0[0][0], Element::monomial(&pr, 1, 1, 1, 1));
        assert_eq!(eps1.map.f0[0][1], Element::monomial(&pr, 2, 0, 3, 4));
        let iota1 = build_map(&d, &CatalogMapId::new(Tag::D3, Site { t: Some(2), h: Some(1), side: Some(Side::U), ..Site::default() })).unwrap();
        assert_eq!(iota1.map.f0[1][0], Element::monomial(&pr, 3, 1, 1, 1));
        assert_eq!(iota1.map.f1, Some(Element::monomial(&pr, 4, 0, 2, 1)));
        let tau1 = build_map(&d, &CatalogMapId::new(Tag::E4, Site { t: Some(2), w: Some(1), h: Some(1), side: Some(Side::U), ..Site::default() })).unwrap();
        assert_eq!(tau1.map.f0[0][0], Element::monomial(&pr, 4, 0, 1, 1));
        assert!(tau1.map.f0[0][1].is_zero());
        let gamma = build_map(&d, &CatalogMapId {
            tag: Tag::C2,
            site: Site { t: Some(2), q: Some(1), ..Site::default() },
            coeffs: Coeffs { d0: 0, c0: 0, ..Coeffs::default() },
        }).unwrap();
        assert_eq!(gamma.map.f0[0][0], Element::monomial(&pr, 1, 1, 1, 1));
        assert_eq!(gamma.map.f0[1][1], Element::monomial(&pr, 1, 1, 3, 1));
        assert_eq!(gamma.map.f1, Some(Element::monomial(&pr, 1, 1, 2, 1)));
        for inst in [&eps1, &iota1, &tau1, &gamma] {
            assert!(inst.map.is_chain_map());
            assert!(!is_null_homotopic(&inst.map));
        }
    }

    #[test]
    fn verify_passes_on_representative_configurations() {
        for (p, r, i0) in [
            (5u64, 4u64, vec![0u64, 1, 3]),
            (5, 4, vec![0]),
            (3, 8, vec![0]),
            (5, 7, vec![0]),
            (3, 8, vec![0, 4]),
            (5, 6, vec![0, 3]),
            (7, 5, vec![0, 1, 3]),
            (7, 4, vec![0, 1, 3]),
            (3, 4, vec![2]),
        ] {
            let pr = params(p, r);
            let report = verify_catalog(&pr, &i0).unwrap();
            assert!(
                report.ok(),
                "catalog verification failed at p={p} r={r} i0={i0:?}: chain={:?} null={:?} nonnull={:?} c1_src={} bsum={} c2={:?}",
                report.chain_failures,
                report.unexpected_null,
                report.unexpected_nonnull,
                report.c1_src_rule_holds,
                report.b_sum_matches_equal_distance_rule,
                report.c2_combined_failures,
            );
            assert!(report.total_instances > 0);
            if (p, r) == (7, 4) {
                // Both letter sides of the sole member miss the reach
                // condition, and each candidate fails commutation.
                assert_eq!(report.d3_exclusions_verified, 2);
            }
        }
    }

    #[test]
    fn c1_threshold_measurement_rejects_the_reverse_reading() {
        // On a wide singleton arc the two candidate thresholds differ and
        // only the flank-to-member distance matches the measured nullity.
        let report = verify_catalog(&params(5, 7), &[0]).unwrap();
        assert!(!report.c1_findings.is_empty());
        assert!(report.c1_src_rule_holds);
        assert!(!report.c1_alt_rule_holds);
        assert!(report
            .c1_findings
            .iter()
            .any(|f| f.threshold_src_dist != f.threshold_alt));
    }

    #[test]
    fn corner_sum_cancellation_depends_on_the_distances() {
        // Equal distances: the cancelling sum is null.
        let sym = verify_catalog(&params(5, 4), &[0, 1, 3]).unwrap();
        assert!(sym.b_sum.iter().any(|f| f.a == f.b && f.is_null));
        // Unequal distances: it is not.
        let asym = verify_catalog(&params(5, 6), &[0, 3]).unwrap();
        assert!(asym.b_sum.iter().all(|f| f.a != f.b && !f.is_null));
        assert!(sym.b_sum_matches_equal_distance_rule && asym.b_sum_matches_equal_distance_rule);
    }

    #[test]
    fn zone_boundary_steps_exist_only_past_the_single_threshold() {
        // j = 7 > p = 5: the boundary steps appear.
        let d = dec(5, 7, &[0]);
        let ids = all_ids(&d);
        assert!(has(&ids, Tag::MuU, |s| s.t == Some(3) && s.tt == Some(2)));
        assert!(has(&ids, Tag::NuV, |s| s.t == Some(4) && s.tt == Some(5)));
        let mu = build_map(&d, &CatalogMapId::new(Tag::MuU, Site { t: Some(3), tt: Some(2), ..Site::default() })).unwrap();
        let pr = params(5, 7);
        assert_eq!(mu.map.f0[0][0], Element::monomial(&pr, 1, 1, 0, 1));
        assert!(mu.map.f0[1][0].is_zero());
        assert_eq!(mu.map.f1, Some(Element::monomial(&pr, 0, 1, 2, 1)));
        // j = p: no singles, no boundary steps.
        let d5 = dec(5, 6, &[0, 1]);
        assert!(!all_ids(&d5).iter().any(|i| matches!(i.tag, Tag::MuU | Tag::NuV)));
    }

    #[test]
    fn bridges_appear_for_small_r_with_several_intervals() {
        let d = dec(7, 5, &[0, 1, 3]);
        let ids = all_ids(&d);
        assert!(has(&ids, Tag::E5, |s| s.t == Some(1) && s.tt == Some(0) && s.side == Some(Side::U)));
        assert!(has(&ids, Tag::E5, |s| s.t == Some(0) && s.tt == Some(1) && s.side == Some(Side::V)));
        let pr = params(7, 5);
        let x_bridge = build_map(&d, &CatalogMapId::new(Tag::E5, Site { t: Some(1), tt: Some(0), side: Some(Side::U), ..Site::default() })).unwrap();
        assert_eq!(x_bridge.map.f0[0][0], Element::monomial(&pr, 4, 0, 0, 1));
        // One-point intervals have no bridge.
        assert!(!has(&ids, Tag::E5, |s| s.t == Some(3)));
    }

    #[test]
    fn inapplicable_ids_are_rejected_with_the_predicate() {
        let d = dec(5, 7, &[0]);
        let err = build_map(&d, &CatalogMapId::new(Tag::EpsilonU, Site { t: Some(0), tt: Some(6), ..Site::default() })).unwrap_err();
        assert!(err.to_string().contains("j <= p-1"));
        let d34 = dec(5, 4, &[0, 1, 3]);
        let err = build_map(&d34, &CatalogMapId::new(Tag::MuU, Site { t: Some(2), tt: Some(1), ..Site::default() })).unwrap_err();
        assert!(err.to_string().contains("p < j"));
        let err = build_map(&d34, &CatalogMapId::new(Tag::D3, Site { t: Some(2), h: Some(2), side: Some(Side::U), ..Site::default() })).unwrap_err();
        assert!(err.to_string().contains("maximal"));
        let d56 = dec(5, 6, &[0, 3]);
        let err = build_map(&d56, &CatalogMapId::new(Tag::D3, Site { t: Some(1), h: Some(0), side: Some(Side::U), ..Site::default() })).unwrap_err();
        assert!(err.to_string().contains("r = 2j < p"));
        let err = build_map(&d34, &CatalogMapId::new(Tag::C1, Site { t: Some(2), q: Some(1), side: Some(Side::U), ..Site::default() })).unwrap_err();
        assert!(err.to_string().contains("j > p"));
    }

    #[test]
    fn composition_of_steps_is_associative() {
        let d = dec(5, 4, &[0]);
        let step = |t: u64, tt: u64| {
            build_map(&d, &CatalogMapId::new(Tag::Xi1, Site { t: Some(t), tt: Some(tt), ..Site::default() }))
                .unwrap()
                .map
        };
        let boundary = build_map(
            &d,
            &CatalogMapId::new(Tag::Adjacent, Site { t: Some(3), tt: Some(0), side: Some(Side::V), ..Site::default() }),
        )
        .unwrap()
        .map;
        let left = step(1, 2).then(&step(2, 3)).then(&boundary);
        let right = step(1, 2).then(&step(2, 3).then(&boundary));
        assert_eq!(left, right);
        assert!(left.is_chain_map());
    }

    #[test]
    fn duality_commutes_with_building() {
        for (p, r, i0) in [
            (5u64, 6u64, vec![0u64, 1]),
            (7, 5, vec![0, 1, 3]),
            (5, 4, vec![0, 1, 3]),
            (5, 7, vec![0]),
            (3, 8, vec![0]),
        ] {
            let pr = params(p, r);
            let d = ArcDecomposition::new(&pr, &i0).unwrap();
            let dual_sel = crate::tilt::dual_i0(&pr, &i0);
            let dd = ArcDecomposition::new(&pr, &dual_sel).unwrap();
            for id in all_ids(&d) {
                let m = build_map(&d, &id).unwrap().map;
                let did = dual_id(&pr, &id);
                let dm = build_map(&dd, &did).unwrap().map;
                assert_eq!(mirror(&pr, &m, &dd), dm, "duality mismatch at {id}");
            }
        }
    }

    /// Applies the letter-swap symmetry to a chain map, rebuilding it over
    /// the mirrored decomposition.
    fn mirror(pr: &BlockParams, m: &ChainMap, dd: &ArcDecomposition) -> ChainMap {
        let flip_elem = |e: &Element| {
            let base = pr.ovr(-(e.base() as i64));
            let mut out = Element::zero(pr, base);
            for (mono, c) in e.terms() {
                out = out.add(&Element::monomial(pr, mono.b, mono.a, base, c));
            }
            out
        };
        let src = tilting_component(dd, pr.ovr(-(m.src.index as i64)));
        let tgt = tilting_component(dd, pr.ovr(-(m.tgt.index as i64)));
        let mut out = ChainMap::zero(&src, &tgt);
        // Summand slots swap under the symmetry: the x-power generator of
        // the image corresponds to the y-power generator of the source.
        let slot_map = |c: &TiltComponent, mc: &TiltComponent, i: usize| -> usize {
            if mc.deg0.len() == 1 {
                return 0;
            }
            let was_u = u_slot(c) == Some(i);
            if was_u {
                v_slot(mc).unwrap()
            } else {
                u_slot(mc).unwrap()
            }
        };
        for i in 0..m.src.deg0.len() {
            for k in 0..m.tgt.deg0.len() {
                let ni = slot_map(&m.src, &src, i);
                let nk = slot_map(&m.tgt, &tgt, k);
                out.f0[ni][nk] = flip_elem(&m.f0[i][k]);
            }
        }
        if let Some(f1) = &m.f1 {
            out.f1 = Some(flip_elem(f1));
        }
        out
    }

    #[test]
    fn every_instance_in_a_wide_sweep_commutes() {
        for (p, r) in [(3u64, 4u64), (3, 5), (3, 7), (5, 6), (7, 4)] {
            let pr = params(p, r);
            for mask in 1u64..(1 << r) - 1 {
                let i0: Vec<u64> = (0..r).filter(|&t| mask >> t & 1 == 1).collect();
                let d = ArcDecomposition::new(&pr, &i0).unwrap();
                for id in all_ids(&d) {
                    let inst = build_map(&d, &id).unwrap();
                    assert!(inst.map.is_chain_map(), "not a chain map: {id} at p={p} r={r} i0={i0:?}");
                    assert!(!inst.map.is_zero(), "zero instance: {id} at p={p} r={r} i0={i0:?}");
                }
            }
        }
    }
}
