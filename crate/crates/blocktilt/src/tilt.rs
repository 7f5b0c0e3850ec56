//! Elementary two-term tilting complexes over the block algebra, chain maps
//! between their components, and Hom spaces in the homotopy category.
//!
//! A subset `I0` of the vertex residues determines one component `T_t` per
//! residue: a stalk `P_t` in degree 0 for `t` in `I0`, and otherwise the
//! two-term complex `Q_t -> P_t` (degrees 0 and 1) where `Q_t` is the
//! projective cover of the submodule of `P_t` spanned by all monomials whose
//! top index lies in `I0`.  Removing `I0` from the cyclic vertex set leaves
//! arcs; the position of `t` inside its arc decides whether `Q_t` is a
//! single projective, a direct sum of two, or zero.
//!
//! Chain maps between components are matrices of homogeneous maps; the
//! homotopy-category Hom space is the space of chain maps modulo the span of
//! null-homotopies `s`, computed exactly over `Z/p` by dense linear algebra.

use crate::algebra::{hom_basis, monomials_with_top, BlockParams, Element};
use crate::fp;
use thiserror::Error;

/// Rejected vertex subsets for [`ArcDecomposition::new`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum I0Error {
    #[error("the selected vertex set must not be empty")]
    Empty,
    #[error("the selected vertex set must be a proper subset of the {0} vertices")]
    Full(u64),
    #[error("vertex {0} is out of range for r = {1}")]
    OutOfRange(u64, u64),
}

/// Position class of a non-selected residue inside its arc, determined by
/// the distances `a` to the selected vertex below and `b` to the one above:
/// both within `p-1` (`Double`), only one (`SingleU`/`SingleV`), or neither
/// (`Gap`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcZone {
    Double,
    SingleU,
    SingleV,
    Gap,
}

/// One maximal run of non-selected residues, flanked by the selected
/// vertices `u` (just below the run) and `v` (just above).  `j` is the
/// cyclic span from `u` to `v`; when the selection is a single vertex `w`,
/// `u = v = w` and `j = r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub u: u64,
    pub v: u64,
    pub j: u64,
    pub members: Vec<u64>,
}

/// The cyclic vertex set split by a proper nonempty selection `I0` into
/// alternating selected intervals and arcs.  `intervals[i]` ends at
/// `arcs[i].u`, and `arcs[i].v` starts `intervals[(i+1) % m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcDecomposition {
    params: BlockParams,
    i0: Vec<u64>,
    intervals: Vec<Vec<u64>>,
    arcs: Vec<Arc>,
}

impl ArcDecomposition {
    /// Validates the selection and splits the circle.  Arcs are listed in
    /// ascending order of their first member; duplicates in `i0` are
    /// ignored.
    pub fn new(params: &BlockParams, i0: &[u64]) -> Result<Self, I0Error> {
        let r = params.r();
        let mut sel = i0.to_vec();
        for &t in &sel {
            if t >= r {
                return Err(I0Error::OutOfRange(t, r));
            }
        }
        sel.sort_unstable();
        sel.dedup();
        if sel.is_empty() {
            return Err(I0Error::Empty);
        }
        if sel.len() as u64 == r {
            return Err(I0Error::Full(r));
        }
        let in_i0 = |t: u64| sel.binary_search(&t).is_ok();

        // Walk clockwise from each interval head (a selected vertex whose
        // predecessor is not selected), collecting the interval and the arc
        // that follows it.
        let mut pairs: Vec<(Vec<u64>, Arc)> = Vec::new();
        for &h in &sel {
            if in_i0(params.ovr(h as i64 - 1)) {
                continue;
            }
            let mut interval = vec![h];
            let mut t = params.ovr(h as i64 + 1);
            while in_i0(t) {
                interval.push(t);
                t = params.ovr(t as i64 + 1);
            }
            let u = *interval.last().unwrap();
            let mut members = Vec::new();
            while !in_i0(t) {
                members.push(t);
                t = params.ovr(t as i64 + 1);
            }
            let v = t;
            let j = members.len() as u64 + 1;
            // A single selected vertex flanks its own arc on both sides and
            // the span is the full circle.
            let j = if sel.len() == 1 { r } else { j };
            pairs.push((interval, Arc { u, v, j, members }));
        }
        pairs.sort_by_key(|(_, arc)| arc.members[0]);
        let (intervals, arcs) = pairs.into_iter().unzip();
        Ok(ArcDecomposition {
            params: *params,
            i0: sel,
            intervals,
            arcs,
        })
    }

    pub fn params(&self) -> &BlockParams {
        &self.params
    }

    /// The selected vertices, sorted ascending.
    pub fn i0(&self) -> &[u64] {
        &self.i0
    }

    pub fn contains(&self, t: u64) -> bool {
        self.i0.binary_search(&t).is_ok()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Selected intervals, aligned with [`Self::arcs`]: interval `i` ends at
    /// `arcs[i].u`.
    pub fn intervals(&self) -> &[Vec<u64>] {
        &self.intervals
    }

    /// Number of arcs (equivalently of selected intervals).
    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    /// The arc containing the non-selected residue `t`.
    pub fn arc_of(&self, t: u64) -> Option<&Arc> {
        self.arcs
            .iter()
            .find(|arc| arc.members.contains(&t))
    }

    /// Flanking selected vertices `(u, v)` of a non-selected residue.
    pub fn uv(&self, t: u64) -> Option<(u64, u64)> {
        self.arc_of(t).map(|arc| (arc.u, arc.v))
    }

    /// Distances `(a, b) = (ovr(t-u), ovr(v-t))` of a non-selected residue
    /// to its flanking selected vertices; `a + b` is the arc span `j`.
    pub fn ab(&self, t: u64) -> Option<(u64, u64)> {
        let (u, v) = self.uv(t)?;
        Some((self.params.ovr_sub(t, u), self.params.ovr_sub(v, t)))
    }

    /// Zone of a non-selected residue.
    pub fn zone(&self, t: u64) -> Option<ArcZone> {
        let (a, b) = self.ab(t)?;
        let pm1 = self.params.p() - 1;
        Some(match (a <= pm1, b <= pm1) {
            (true, true) => ArcZone::Double,
            (true, false) => ArcZone::SingleU,
            (false, true) => ArcZone::SingleV,
            (false, false) => ArcZone::Gap,
        })
    }

    /// Index of the selected interval containing `w`.
    pub fn interval_of(&self, w: u64) -> Option<usize> {
        self.intervals.iter().position(|iv| iv.contains(&w))
    }
}

/// The mirrored selection `{-t : t in i0}` (sorted).  The symmetry swapping
/// the two arrow letters and negating residues carries the complex built on
/// `i0` to the one built on this set.
pub fn dual_i0(params: &BlockParams, i0: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = i0.iter().map(|&t| params.ovr(-(t as i64))).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The submodule of `P_t` spanned by all monomials whose top index is
/// selected, presented by its monomial basis and its minimal monomial
/// generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelPresentation {
    /// All monomials `(a, b)` lying in the submodule, ascending `(a, b)`.
    pub monomials: Vec<(u32, u32)>,
    /// Minimal generators under the divisibility order; every minimal
    /// generator is a pure power (`(a, 0)` listed before `(0, b)`).
    pub generators: Vec<(u32, u32)>,
}

/// Computes the submodule of `P_t` generated by monomials with selected top
/// index, generically (mark and upward-close the exponent grid); `t` must
/// not be selected.
pub fn minimal_kernel(params: &BlockParams, i0: &[u64], t: u64) -> KernelPresentation {
    let p = params.p() as usize;
    let selected = |res: u64| i0.contains(&res);
    assert!(
        !selected(t),
        "the kernel presentation is defined for non-selected residues"
    );
    let mut marked = vec![vec![false; p]; p];
    for a in 0..p {
        for b in 0..p {
            let top = params.ovr(t as i64 - a as i64 + b as i64);
            if selected(top) {
                marked[a][b] = true;
            }
        }
    }
    // The submodule generated by a monomial contains every exponentwise
    // larger monomial, so the span is the upward closure.
    let mut closed = vec![vec![false; p]; p];
    for a in 0..p {
        for b in 0..p {
            closed[a][b] = marked[a][b]
                || (a > 0 && closed[a - 1][b])
                || (b > 0 && closed[a][b - 1]);
        }
    }
    let mut monomials = Vec::new();
    let mut generators = Vec::new();
    for a in 0..p {
        for b in 0..p {
            if !closed[a][b] {
                continue;
            }
            monomials.push((a as u32, b as u32));
            let minimal =
                (a == 0 || !closed[a - 1][b]) && (b == 0 || !closed[a][b - 1]);
            if minimal {
                generators.push((a as u32, b as u32));
            }
        }
    }
    // Diagonal shifts keep the top index, so a minimal generator always has
    // a zero exponent; order the x-power before the y-power.
    assert!(
        generators.iter().all(|&(a, b)| a == 0 || b == 0),
        "minimal generators must be pure powers"
    );
    generators.sort_by_key(|&(a, b)| (b, a));
    KernelPresentation {
        monomials,
        generators,
    }
}

/// One component of the elementary complex: either a stalk (degree 0 for
/// selected residues, degree 1 when the kernel vanishes) or the two-term
/// complex `Q_t -> P_t` with `Q_t` in degree 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TiltComponent {
    params: BlockParams,
    /// The residue this component belongs to.
    pub index: u64,
    /// Projective indices of the degree-0 summands.
    pub deg0: Vec<u64>,
    /// Projective index of the degree-1 summand, if any.
    pub deg1: Vec<u64>,
    /// Differential entries, one per degree-0 summand, with values in
    /// `P_index`.
    pub d: Vec<Element>,
}

impl TiltComponent {
    pub fn params(&self) -> &BlockParams {
        &self.params
    }

    /// A degree-0 stalk carrying the single projective at residue `t`,
    /// independent of any vertex selection.  This is the shape every
    /// component takes in the projective-side harness, where the chain-map
    /// machinery must reproduce the plain module-level answers.
    pub fn stalk(params: &BlockParams, t: u64) -> TiltComponent {
        TiltComponent {
            params: *params,
            index: t,
            deg0: vec![t],
            deg1: vec![],
            d: vec![],
        }
    }

    /// True for selected residues: a single projective in degree 0.
    pub fn is_degree0_stalk(&self) -> bool {
        self.deg1.is_empty()
    }

    /// True when the kernel vanished: a single projective in degree 1.
    pub fn is_degree1_stalk(&self) -> bool {
        self.deg0.is_empty() && !self.deg1.is_empty()
    }
}

/// Builds the component at residue `t`, cross-checking the generic kernel
/// computation against the closed-form generators read off the arc
/// distances.
pub fn tilting_component(dec: &ArcDecomposition, t: u64) -> TiltComponent {
    let params = *dec.params();
    if dec.contains(t) {
        return TiltComponent {
            params,
            index: t,
            deg0: vec![t],
            deg1: vec![],
            d: vec![],
        };
    }
    let kernel = minimal_kernel(&params, dec.i0(), t);
    let (a, b) = dec.ab(t).expect("non-selected residue lies in an arc");
    let pm1 = params.p() - 1;
    let mut expected = Vec::new();
    if a <= pm1 {
        expected.push((a as u32, 0u32));
    }
    if b <= pm1 {
        expected.push((0u32, b as u32));
    }
    assert_eq!(
        kernel.generators, expected,
        "generic kernel generators must match the arc-distance powers at t={t}"
    );
    let mut deg0 = Vec::new();
    let mut d = Vec::new();
    for &(ga, gb) in &kernel.generators {
        let elem = Element::monomial(&params, ga, gb, t, 1);
        let top = elem
            .uniform_top(&params)
            .expect("generator monomials are nonzero");
        assert!(
            ga + gb > 0,
            "a differential entry must not be an isomorphism"
        );
        deg0.push(top);
        d.push(elem);
    }
    TiltComponent {
        params,
        index: t,
        deg0,
        deg1: vec![t],
        d,
    }
}

/// Builds all `r` components for the selection, indexed by residue.
pub fn build_tilting_complex(
    params: &BlockParams,
    i0: &[u64],
) -> Result<Vec<TiltComponent>, I0Error> {
    let dec = ArcDecomposition::new(params, i0)?;
    Ok((0..params.r()).map(|t| tilting_component(&dec, t)).collect())
}

/// A chain map between two components: `f0` maps degree-0 summands to
/// degree-0 summands (entry `[i][k]` is the homogeneous map from source
/// summand `i` into target summand `k`, carried by an element of the
/// target's projective), and `f1` maps the degree-1 summands when both
/// exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    pub src: TiltComponent,
    pub tgt: TiltComponent,
    pub f0: Vec<Vec<Element>>,
    pub f1: Option<Element>,
}

impl ChainMap {
    pub fn zero(src: &TiltComponent, tgt: &TiltComponent) -> ChainMap {
        let params = src.params;
        let f0 = src
            .deg0
            .iter()
            .map(|_| {
                tgt.deg0
                    .iter()
                    .map(|&tk| Element::zero(&params, tk))
                    .collect()
            })
            .collect();
        let f1 = if !src.deg1.is_empty() && !tgt.deg1.is_empty() {
            Some(Element::zero(&params, tgt.index))
        } else {
            None
        };
        ChainMap {
            src: src.clone(),
            tgt: tgt.clone(),
            f0,
            f1,
        }
    }

    pub fn identity(c: &TiltComponent) -> ChainMap {
        let params = c.params;
        let mut m = ChainMap::zero(c, c);
        for (i, &s) in c.deg0.iter().enumerate() {
            m.f0[i][i] = Element::monomial(&params, 0, 0, s, 1);
        }
        if !c.deg1.is_empty() {
            m.f1 = Some(Element::monomial(&params, 0, 0, c.index, 1));
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.f0.iter().flatten().all(|e| e.is_zero())
            && self.f1.as_ref().map_or(true, |e| e.is_zero())
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        assert_eq!(self.src.index, other.src.index);
        assert_eq!(self.tgt.index, other.tgt.index);
        let f0 = self
            .f0
            .iter()
            .zip(&other.f0)
            .map(|(r1, r2)| r1.iter().zip(r2).map(|(a, b)| a.add(b)).collect())
            .collect();
        let f1 = match (&self.f1, &other.f1) {
            (Some(a), Some(b)) => Some(a.add(b)),
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (None, None) => None,
        };
        ChainMap {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            f0,
            f1,
        }
    }

    pub fn scale(&self, c: u64) -> ChainMap {
        ChainMap {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            f0: self
                .f0
                .iter()
                .map(|row| row.iter().map(|e| e.scale(c)).collect())
                .collect(),
            f1: self.f1.as_ref().map(|e| e.scale(c)),
        }
    }

    pub fn neg(&self) -> ChainMap {
        self.scale(self.src.params.p() - 1)
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        self.add(&other.neg())
    }

    /// Composition in apply order: `self` then `other`; the middle
    /// component must match.
    pub fn then(&self, other: &ChainMap) -> ChainMap {
        assert_eq!(
            self.tgt.index, other.src.index,
            "composition requires matching middle component"
        );
        let params = self.src.params;
        let mut out = ChainMap::zero(&self.src, &other.tgt);
        for i in 0..self.src.deg0.len() {
            for m in 0..other.tgt.deg0.len() {
                let mut acc = Element::zero(&params, other.tgt.deg0[m]);
                for k in 0..self.tgt.deg0.len() {
                    acc = acc.add(&self.f0[i][k].then(&other.f0[k][m], &params));
                }
                out.f0[i][m] = acc;
            }
        }
        if let Some(slot) = out.f1.take() {
            out.f1 = Some(match (&self.f1, &other.f1) {
                (Some(a), Some(b)) => a.then(b, &params),
                _ => slot,
            });
        }
        out
    }

    /// Exact commutation test: for every degree-0 source summand, the
    /// composite through `f0` and the target differential equals the
    /// composite through the source differential and `f1`.  Conditions into
    /// an absent target degree-1 summand are vacuous.
    pub fn is_chain_map(&self) -> bool {
        if self.tgt.deg1.is_empty() {
            return true;
        }
        let params = self.src.params;
        let w = self.tgt.index;
        for i in 0..self.src.deg0.len() {
            let mut lhs = Element::zero(&params, w);
            for k in 0..self.tgt.deg0.len() {
                lhs = lhs.add(&self.f0[i][k].then(&self.tgt.d[k], &params));
            }
            let rhs = if self.src.deg1.is_empty() {
                Element::zero(&params, w)
            } else {
                let f1 = self
                    .f1
                    .clone()
                    .unwrap_or_else(|| Element::zero(&params, w));
                self.src.d[i].then(&f1, &params)
            };
            if lhs != rhs {
                return false;
            }
        }
        true
    }
}

/// Coordinate system for all degree-preserving maps between two components:
/// one block per `(source summand, target summand)` pair in degree 0, in
/// row-major order, then the degree-1 block; block coordinates follow the
/// deterministic homogeneous-generator order.
#[derive(Debug, Clone)]
pub struct CoordLayout {
    params: BlockParams,
    src: TiltComponent,
    tgt: TiltComponent,
    blocks: Vec<LayoutBlock>,
    dim: usize,
}

#[derive(Debug, Clone)]
struct LayoutBlock {
    slot: BlockSlot,
    base: u64,
    monomials: Vec<(u32, u32)>,
    offset: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BlockSlot {
    F0 { i: usize, k: usize },
    F1,
}

impl CoordLayout {
    pub fn new(src: &TiltComponent, tgt: &TiltComponent) -> CoordLayout {
        Self::build(src, tgt, false)
    }

    /// Same space with each block's coordinate order reversed; dimensions
    /// computed through either layout must agree.
    #[doc(hidden)]
    pub fn new_reversed(src: &TiltComponent, tgt: &TiltComponent) -> CoordLayout {
        Self::build(src, tgt, true)
    }

    fn build(src: &TiltComponent, tgt: &TiltComponent, reversed: bool) -> CoordLayout {
        let params = src.params;
        let mut blocks = Vec::new();
        let mut offset = 0;
        let mut push = |slot: BlockSlot, top: u64, base: u64, offset: &mut usize| {
            let mut monomials: Vec<(u32, u32)> = hom_basis(&params, top, base)
                .basis
                .iter()
                .map(|g| g.exponents())
                .collect();
            if reversed {
                monomials.reverse();
            }
            let len = monomials.len();
            blocks.push(LayoutBlock {
                slot,
                base,
                monomials,
                offset: *offset,
            });
            *offset += len;
        };
        for (i, &si) in src.deg0.iter().enumerate() {
            for (k, &tk) in tgt.deg0.iter().enumerate() {
                push(BlockSlot::F0 { i, k }, si, tk, &mut offset);
            }
        }
        if !src.deg1.is_empty() && !tgt.deg1.is_empty() {
            push(BlockSlot::F1, src.index, tgt.index, &mut offset);
        }
        CoordLayout {
            params,
            src: src.clone(),
            tgt: tgt.clone(),
            blocks,
            dim: offset,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn src(&self) -> &TiltComponent {
        &self.src
    }

    pub fn tgt(&self) -> &TiltComponent {
        &self.tgt
    }

    pub fn flatten(&self, f: &ChainMap) -> Vec<u64> {
        assert_eq!(f.src.index, self.src.index);
        assert_eq!(f.tgt.index, self.tgt.index);
        let mut v = vec![0u64; self.dim];
        for block in &self.blocks {
            let elem = match block.slot {
                BlockSlot::F0 { i, k } => Some(&f.f0[i][k]),
                BlockSlot::F1 => f.f1.as_ref(),
            };
            let Some(elem) = elem else { continue };
            let mut seen = 0usize;
            for (pos, &(a, b)) in block.monomials.iter().enumerate() {
                let c = elem.coeff(a, b);
                if c != 0 {
                    seen += 1;
                }
                v[block.offset + pos] = c;
            }
            let nonzero = elem.terms().count();
            assert_eq!(
                seen, nonzero,
                "an entry holds monomials outside its routing block"
            );
        }
        v
    }

    pub fn unflatten(&self, v: &[u64]) -> ChainMap {
        assert_eq!(v.len(), self.dim);
        let params = self.params;
        let mut f = ChainMap::zero(&self.src, &self.tgt);
        for block in &self.blocks {
            let mut elem = Element::zero(&params, block.base);
            for (pos, &(a, b)) in block.monomials.iter().enumerate() {
                let c = v[block.offset + pos];
                if c != 0 {
                    elem = elem.add(&Element::monomial(&params, a, b, block.base, c));
                }
            }
            match block.slot {
                BlockSlot::F0 { i, k } => f.f0[i][k] = elem,
                BlockSlot::F1 => {
                    if f.f1.is_some() {
                        f.f1 = Some(elem);
                    } else {
                        assert!(elem.is_zero());
                    }
                }
            }
        }
        f
    }
}

/// The full linear-algebra picture of maps between two components: the
/// coordinate layout, a basis of the chain-map space, the canonical
/// null-homotopic subspace, and chosen class representatives.
#[derive(Debug, Clone)]
pub struct PairSpace {
    pub layout: CoordLayout,
    pub raw_basis: Vec<Vec<u64>>,
    pub null: fp::RowSpace,
    pub rep_vectors: Vec<Vec<u64>>,
}

impl PairSpace {
    pub fn new(src: &TiltComponent, tgt: &TiltComponent) -> PairSpace {
        Self::with_layout(CoordLayout::new(src, tgt))
    }

    #[doc(hidden)]
    pub fn with_layout(layout: CoordLayout) -> PairSpace {
        let params = layout.params;
        let p = params.p();
        let src = layout.src.clone();
        let tgt = layout.tgt.clone();

        // Commutation constraints: one row per (source summand, monomial of
        // the target's degree-1 projective with that summand's top).
        let raw_basis = if tgt.deg1.is_empty() {
            fp::Mat::zeros(p, 0, layout.dim).kernel()
        } else {
            let w = tgt.index;
            let mut row_index = Vec::new();
            let mut row_of = std::collections::HashMap::new();
            for (i, &si) in src.deg0.iter().enumerate() {
                for mono in monomials_with_top(&params, w, si) {
                    row_of.insert((i, mono), row_index.len());
                    row_index.push((i, mono));
                }
            }
            let mut mat = fp::Mat::zeros(p, row_index.len(), layout.dim);
            for block in &layout.blocks {
                for (pos, &(a, b)) in block.monomials.iter().enumerate() {
                    let col = block.offset + pos;
                    let unit = Element::monomial(&params, a, b, block.base, 1);
                    match block.slot {
                        BlockSlot::F0 { i, k } => {
                            let comp = unit.then(&tgt.d[k], &params);
                            for (m, c) in comp.terms() {
                                let row = row_of[&(i, (m.a, m.b))];
                                mat[(row, col)] = fp::add(p, mat[(row, col)], c);
                            }
                        }
                        BlockSlot::F1 => {
                            for (i, _) in src.deg0.iter().enumerate() {
                                let comp = src.d[i].then(&unit, &params);
                                for (m, c) in comp.terms() {
                                    let row = row_of[&(i, (m.a, m.b))];
                                    mat[(row, col)] =
                                        fp::sub(p, mat[(row, col)], c);
                                }
                            }
                        }
                    }
                }
            }
            mat.kernel()
        };

        // Null-homotopic subspace: images of all elementary homotopies
        // s : source degree-1 summand -> target degree-0 summand.
        let mut null = fp::RowSpace::new(p, layout.dim);
        if !src.deg1.is_empty() {
            let s_top = src.index;
            for (k, &tk) in tgt.deg0.iter().enumerate() {
                for (a, b) in monomials_with_top(&params, tk, s_top) {
                    let s_gen = Element::monomial(&params, a, b, tk, 1);
                    let mut img = ChainMap::zero(&src, &tgt);
                    for i in 0..src.deg0.len() {
                        img.f0[i][k] = src.d[i].then(&s_gen, &params);
                    }
                    if !tgt.deg1.is_empty() {
                        img.f1 = Some(s_gen.then(&tgt.d[k], &params));
                    }
                    null.insert(&layout.flatten(&img));
                }
            }
        }

        // Representatives: raw basis vectors that grow the null-seeded span.
        let mut grow = null.clone();
        let mut rep_vectors = Vec::new();
        for v in &raw_basis {
            if grow.insert(v) {
                rep_vectors.push(v.clone());
            }
        }

        PairSpace {
            layout,
            raw_basis,
            null,
            rep_vectors,
        }
    }

    pub fn raw_dim(&self) -> usize {
        self.raw_basis.len()
    }

    pub fn null_dim(&self) -> usize {
        self.null.dim()
    }

    pub fn dim(&self) -> usize {
        self.raw_dim() - self.null_dim()
    }
}

/// Basis of the space of chain maps between two components, in layout
/// coordinates.
pub fn chain_map_space(src: &TiltComponent, tgt: &TiltComponent) -> Vec<Vec<u64>> {
    PairSpace::new(src, tgt).raw_basis
}

/// Canonical basis (reduced row-echelon rows) of the null-homotopic
/// subspace between two components, in layout coordinates.
pub fn null_homotopic_subspace(src: &TiltComponent, tgt: &TiltComponent) -> Vec<Vec<u64>> {
    PairSpace::new(src, tgt).null.basis().to_vec()
}

/// The Hom space between two components in the homotopy category.
#[derive(Debug, Clone)]
pub struct HomKSpace {
    pub dim: usize,
    pub raw_dim: usize,
    pub null_dim: usize,
    pub reps: Vec<ChainMap>,
}

/// Chain maps modulo null-homotopies, with deterministic representatives.
pub fn hom_k(src: &TiltComponent, tgt: &TiltComponent) -> HomKSpace {
    let space = PairSpace::new(src, tgt);
    let reps = space
        .rep_vectors
        .iter()
        .map(|v| space.layout.unflatten(v))
        .collect();
    HomKSpace {
        dim: space.dim(),
        raw_dim: space.raw_dim(),
        null_dim: space.null_dim(),
        reps,
    }
}

/// Membership of a chain map in the null-homotopic subspace.  The input
/// must satisfy the chain-map condition.
pub fn is_null_homotopic(f: &ChainMap) -> bool {
    assert!(
        f.is_chain_map(),
        "null-homotopy membership is only defined for chain maps"
    );
    let space = PairSpace::new(&f.src, &f.tgt);
    let v = space.layout.flatten(f);
    space.null.contains(&v)
}

/// Dimension of the homotopy-category Hom from `src` to the `n`-fold shift
/// of `tgt`.  For `|n| >= 2` the degree supports are disjoint, so the space
/// is zero with nothing to solve; `n = 0` is the plain Hom dimension.
pub fn shifted_hom_dim(src: &TiltComponent, tgt: &TiltComponent, n: i64) -> usize {
    match n {
        0 => PairSpace::new(src, tgt).dim(),
        1 => hom_into_shift(src, tgt),
        -1 => hom_from_shift(src, tgt),
        _ => 0,
    }
}

/// Maps from `src` into the left shift of `tgt`: every degree-0-to-degree-1
/// map is a chain map; quotient by images of the two homotopy legs.
fn hom_into_shift(src: &TiltComponent, tgt: &TiltComponent) -> usize {
    if tgt.deg1.is_empty() || src.deg0.is_empty() {
        return 0;
    }
    let params = src.params;
    let p = params.p();
    let w = tgt.index;
    // Ambient coordinates: per source summand, the monomials of P_w with
    // that summand's top.
    let mut offsets = Vec::new();
    let mut pos_of = std::collections::HashMap::new();
    let mut dim = 0usize;
    for (i, &si) in src.deg0.iter().enumerate() {
        offsets.push(dim);
        for mono in monomials_with_top(&params, w, si) {
            pos_of.insert((i, mono), dim);
            dim += 1;
        }
    }
    if dim == 0 {
        return 0;
    }
    let mut span = fp::RowSpace::new(p, dim);
    let mut add_image = |entries: Vec<(usize, Element)>| {
        let mut v = vec![0u64; dim];
        for (i, elem) in entries {
            for (m, c) in elem.terms() {
                if let Some(&pos) = pos_of.get(&(i, (m.a, m.b))) {
                    v[pos] = fp::add(p, v[pos], c);
                } else if c != 0 {
                    unreachable!("composite leaves its routing block");
                }
            }
        }
        span.insert(&v);
    };
    // Leg one: any degree-0 map s0 into target degree 0, composed with the
    // target differential.
    for (k, &tk) in tgt.deg0.iter().enumerate() {
        for (i, &si) in src.deg0.iter().enumerate() {
            for (a, b) in monomials_with_top(&params, tk, si) {
                let s0 = Element::monomial(&params, a, b, tk, 1);
                add_image(vec![(i, s0.then(&tgt.d[k], &params))]);
            }
        }
        let _ = k;
    }
    // Leg two: any degree-1 map s1, preceded by the source differential.
    if !src.deg1.is_empty() {
        for (a, b) in monomials_with_top(&params, w, src.index) {
            let s1 = Element::monomial(&params, a, b, w, 1);
            let entries = (0..src.deg0.len())
                .map(|i| (i, src.d[i].then(&s1, &params)))
                .collect();
            add_image(entries);
        }
    }
    dim - span.dim()
}

/// Maps from the left shift of `src` into `tgt`: degree-1-to-degree-0 maps
/// killed by both differentials; no homotopies exist.
fn hom_from_shift(src: &TiltComponent, tgt: &TiltComponent) -> usize {
    if src.deg1.is_empty() || tgt.deg0.is_empty() {
        return 0;
    }
    let params = src.params;
    let p = params.p();
    let s_top = src.index;
    // Unknown coordinates: per target summand, monomials with top s_top.
    let mut cols = Vec::new();
    for (k, &tk) in tgt.deg0.iter().enumerate() {
        for mono in monomials_with_top(&params, tk, s_top) {
            cols.push((k, mono));
        }
    }
    if cols.is_empty() {
        return 0;
    }
    // Constraint rows: the composite with the source differential must
    // vanish summand by summand, and the composite into the target
    // differential must vanish.
    let mut row_of = std::collections::HashMap::new();
    let mut n_rows = 0usize;
    for (i, &si) in src.deg0.iter().enumerate() {
        for (k, &tk) in tgt.deg0.iter().enumerate() {
            for mono in monomials_with_top(&params, tk, si) {
                row_of.insert((0usize, i, k, mono), n_rows);
                n_rows += 1;
            }
        }
    }
    if !tgt.deg1.is_empty() {
        for mono in monomials_with_top(&params, tgt.index, s_top) {
            row_of.insert((1usize, 0, 0, mono), n_rows);
            n_rows += 1;
        }
    }
    let mut mat = fp::Mat::zeros(p, n_rows, cols.len());
    for (col, &(k, (a, b))) in cols.iter().enumerate() {
        let g = Element::monomial(&params, a, b, tgt.deg0[k], 1);
        for i in 0..src.deg0.len() {
            let comp = src.d[i].then(&g, &params);
            for (m, c) in comp.terms() {
                let row = row_of[&(0usize, i, k, (m.a, m.b))];
                mat[(row, col)] = fp::add(p, mat[(row, col)], c);
            }
        }
        if !tgt.deg1.is_empty() {
            let comp = g.then(&tgt.d[k], &params);
            for (m, c) in comp.terms() {
                let row = row_of[&(1usize, 0, 0, (m.a, m.b))];
                mat[(row, col)] = fp::add(p, mat[(row, col)], c);
            }
        }
    }
    mat.kernel().len()
}

/// One nonzero Hom space against a shifted component, reported by
/// [`verify_tilting`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftFailure {
    pub from: u64,
    pub to: u64,
    pub shift: i64,
    pub dim: usize,
}

/// Result of the two tilting certifications: vanishing Hom against both
/// shifts, and unimodularity of the class matrix over the stalk classes.
#[derive(Debug, Clone)]
pub struct TiltingReport {
    pub shift_failures: Vec<ShiftFailure>,
    pub k0_det: i128,
    pub k0_unimodular: bool,
    /// The class-matrix check can only refute, never fully certify,
    /// generation; this flag is always set to make that explicit.
    pub k0_check_is_necessary_only: bool,
}

impl TiltingReport {
    pub fn passed(&self) -> bool {
        self.shift_failures.is_empty() && self.k0_unimodular
    }
}

/// Integer matrix expressing each component's alternating-sum class in the
/// stalk classes: `+1` per degree-0 summand, `-1` per degree-1 summand.
pub fn k0_matrix(components: &[TiltComponent]) -> Vec<i128> {
    let r = components.len();
    let mut m = vec![0i128; r * r];
    for (row, c) in components.iter().enumerate() {
        for &s in &c.deg0 {
            m[row * r + s as usize] += 1;
        }
        for &s in &c.deg1 {
            m[row * r + s as usize] -= 1;
        }
    }
    m
}

/// Checks the two certifiable tilting conditions for a full set of
/// components: all Hom spaces against the two adjacent shifts vanish
/// (larger shifts are zero by degree support), and the class matrix is
/// unimodular.
pub fn verify_tilting(components: &[TiltComponent]) -> TiltingReport {
    let mut shift_failures = Vec::new();
    for ci in components {
        for cj in components {
            for n in [1i64, -1] {
                let dim = shifted_hom_dim(ci, cj, n);
                if dim != 0 {
                    shift_failures.push(ShiftFailure {
                        from: ci.index,
                        to: cj.index,
                        shift: n,
                        dim,
                    });
                }
            }
        }
    }
    let r = components.len();
    let k0_det = fp::det_bareiss(r, &k0_matrix(components));
    TiltingReport {
        shift_failures,
        k0_det,
        k0_unimodular: k0_det == 1 || k0_det == -1,
        k0_check_is_necessary_only: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, r: u64) -> BlockParams {
        BlockParams::new(p, r).expect("valid parameters")
    }

    fn dec(p: u64, r: u64, i0: &[u64]) -> ArcDecomposition {
        ArcDecomposition::new(&params(p, r), i0).expect("valid selection")
    }

    #[test]
    fn arc_decomposition_examples() {
        let d = dec(5, 4, &[0, 1, 3]);
        assert_eq!(d.arcs().len(), 1);
        assert_eq!(d.arcs()[0], Arc { u: 1, v: 3, j: 2, members: vec![2] });
        // The selected run wraps around 0 and is listed from its head.
        assert_eq!(d.intervals()[0], vec![3, 0, 1]);
        assert_eq!(d.i0(), &[0, 1, 3]);
        assert!(d.contains(3));
        assert!(!d.contains(2));
    }

    #[test]
    fn arc_decomposition_singleton() {
        let d = dec(3, 5, &[2]);
        assert_eq!(d.m(), 1);
        assert_eq!(
            d.arcs()[0],
            Arc { u: 2, v: 2, j: 5, members: vec![3, 4, 0, 1] }
        );
        assert_eq!(d.intervals()[0], vec![2]);
    }

    #[test]
    fn arc_decomposition_two_arcs() {
        let d = dec(5, 6, &[0, 3]);
        assert_eq!(d.m(), 2);
        assert_eq!(d.arcs()[0], Arc { u: 0, v: 3, j: 3, members: vec![1, 2] });
        assert_eq!(d.arcs()[1], Arc { u: 3, v: 0, j: 3, members: vec![4, 5] });
        assert_eq!(d.intervals(), &[vec![0], vec![3]]);
    }

    #[test]
    fn arc_decomposition_rejects_bad_selections() {
        let pr = params(5, 4);
        assert_eq!(ArcDecomposition::new(&pr, &[]), Err(I0Error::Empty));
        assert_eq!(
            ArcDecomposition::new(&pr, &[0, 1, 2, 3]),
            Err(I0Error::Full(4))
        );
        assert_eq!(
            ArcDecomposition::new(&pr, &[4]),
            Err(I0Error::OutOfRange(4, 4))
        );
    }

    #[test]
    fn zones_of_a_long_arc() {
        // p=3, r=8, single selected vertex: spans 1..7 around the circle.
        let d = dec(3, 8, &[0]);
        assert_eq!(d.zone(1), Some(ArcZone::SingleU));
        assert_eq!(d.zone(2), Some(ArcZone::SingleU));
        assert_eq!(d.zone(3), Some(ArcZone::Gap));
        assert_eq!(d.zone(4), Some(ArcZone::Gap));
        assert_eq!(d.zone(5), Some(ArcZone::Gap));
        assert_eq!(d.zone(6), Some(ArcZone::SingleV));
        assert_eq!(d.zone(7), Some(ArcZone::SingleV));
        assert_eq!(d.ab(3), Some((3, 5)));
    }

    #[test]
    fn zones_of_a_short_arc() {
        let d = dec(5, 4, &[0, 1, 3]);
        assert_eq!(d.zone(2), Some(ArcZone::Double));
        assert_eq!(d.ab(2), Some((1, 1)));
        assert_eq!(d.uv(2), Some((1, 3)));
    }

    #[test]
    fn minimal_kernel_examples() {
        let pr = params(5, 4);
        let k = minimal_kernel(&pr, &[0, 1, 3], 2);
        assert_eq!(k.generators, vec![(1, 0), (0, 1)]);
        // 24 of the 25 monomials have selected top (only top 2 is excluded:
        // the 6 monomials with b-a = 0 mod 4 minus... count directly).
        let pr38 = params(3, 8);
        let empty = minimal_kernel(&pr38, &[0], 4);
        assert!(empty.generators.is_empty());
        assert!(empty.monomials.is_empty());
        let single = minimal_kernel(&pr38, &[0], 2);
        assert_eq!(single.generators, vec![(2, 0)]);
        assert_eq!(single.monomials, vec![(2, 0), (2, 1), (2, 2)]);
    }

    #[test]
    fn components_of_the_p5_r4_example() {
        let pr = params(5, 4);
        let comps = build_tilting_complex(&pr, &[0, 1, 3]).unwrap();
        for &i in &[0u64, 1, 3] {
            assert!(comps[i as usize].is_degree0_stalk());
            assert_eq!(comps[i as usize].deg0, vec![i]);
        }
        let t2 = &comps[2];
        assert_eq!(t2.deg0, vec![1, 3]);
        assert_eq!(t2.deg1, vec![2]);
        assert_eq!(t2.d[0], Element::monomial(&pr, 1, 0, 2, 1));
        assert_eq!(t2.d[1], Element::monomial(&pr, 0, 1, 2, 1));
    }

    #[test]
    fn gap_component_is_a_degree1_stalk() {
        let pr = params(3, 8);
        let comps = build_tilting_complex(&pr, &[0]).unwrap();
        let t4 = &comps[4];
        assert!(t4.is_degree1_stalk());
        assert!(t4.deg0.is_empty());
        assert_eq!(t4.deg1, vec![4]);
        // Single-sided neighbours.
        assert_eq!(comps[2].deg0, vec![0]);
        assert_eq!(comps[2].d[0], Element::monomial(&pr, 2, 0, 2, 1));
        assert_eq!(comps[6].deg0, vec![0]);
        assert_eq!(comps[6].d[0], Element::monomial(&pr, 0, 2, 6, 1));
    }

    #[test]
    fn identity_and_zero_are_chain_maps() {
        let pr = params(5, 4);
        let comps = build_tilting_complex(&pr, &[0, 1, 3]).unwrap();
        for c in &comps {
            assert!(ChainMap::identity(c).is_chain_map());
            for c2 in &comps {
                assert!(ChainMap::zero(c, c2).is_chain_map());
            }
        }
    }

    #[test]
    fn one_step_map_between_doubles_is_a_chain_map() {
        // Singleton selection, arc of doubles: components at 1, 2, 3 all
        // have two summands based at 0.
        let pr = params(5, 4);
        let comps = build_tilting_complex(&pr, &[0]).unwrap();
        let (t1, t2) = (&comps[1], &comps[2]);
        let mut down = ChainMap::zero(t1, t2);
        down.f0[0][0] = Element::monomial(&pr, 0, 0, 0, 1);
        down.f0[1][1] = Element::monomial(&pr, 1, 1, 0, 1);
        down.f1 = Some(Element::monomial(&pr, 1, 0, 2, 1));
        assert!(down.is_chain_map());
        // Dropping the second diagonal entry breaks commutation.
        let mut broken = down.clone();
        broken.f0[1][1] = Element::zero(&pr, 0);
        assert!(!broken.is_chain_map());
        let mut up = ChainMap::zero(t2, t1);
        up.f0[0][0] = Element::monomial(&pr, 1, 1, 0, 1);
        up.f0[1][1] = Element::monomial(&pr, 0, 0, 0, 1);
        up.f1 = Some(Element::monomial(&pr, 0, 1, 1, 1));
        assert!(up.is_chain_map());
    }

    #[test]
    fn into_complex_identity_is_not_a_chain_map() {
        // From the stalk at 1 into the complex at 2, sending the summand
        // identically, the square cannot commute.
        let pr = params(5, 4);
        let comps = build_tilting_complex(&pr, &[0, 1, 3]).unwrap();
        let mut f = ChainMap::zero(&comps[1], &comps[2]);
        f.f0[0][0] = Element::monomial(&pr, 0, 0, 1, 1);
        assert!(!f.is_chain_map());
    }

    #[test]
    fn every_map_into_a_degree0_stalk_is_a_chain_map() {
        let pr = params(5, 4);
        let comps = build_tilting_complex(&pr, &[0, 1, 3]).unwrap();
        let mut proj = ChainMap::zero(&comps[2], &comps[1]);
        proj.f0[0][0] = Element::monomial(&pr, 0, 0, 1, 1);
        assert!(proj.is_chain_map());
        proj.f0[1][0] = Element::monomial(&pr, 2, 0, 1, 3);
        assert!(proj.is_chain_map());
    }

    #[test]
    fn stalk_to_stalk_spaces_match_the_hom_count() {
        let pr = params(5, 4);
        let comps = build_tilting_complex(&pr, &[0, 1, 3]).unwrap();
        for &i in &[0u64, 1, 3] {
            for &k in &[0u64, 1, 3] {
                let hk = hom_k(&comps[i as usize], &comps[k as usize]);
                assert_eq!(
                    hk.raw_dim,
                    crate::algebra::hom_dim_oracle(&pr, i, k)
                );
                assert_eq!(hk.null_dim, 0);
                assert_eq!(hk.dim, hk.raw_dim);
            }
        }
    }

    #[test]
    fn self_space_of_the_double_component() {
        // Hand-counted for p=5, r=4, selection {0,1,3}: the chain-map space
        // of the component at 2 has dimension 33 - 12 = 21, the homotopy
        // span has dimension 12, leaving 9 classes.
        let pr = params(5, 4);
        let comps = build_tilting_complex(&pr, &[0, 1, 3]).unwrap();
        let hk = hom_k(&comps[2], &comps[2]);
        assert_eq!(hk.raw_dim, 21);
        assert_eq!(hk.null_dim, 12);
        assert_eq!(hk.dim, 9);
        for rep in &hk.reps {
            assert!(rep.is_chain_map());
            assert!(!is_null_homotopic(rep));
        }
    }

    #[test]
    fn stalk_to_double_space() {
        // Hand-counted: all 12 degree-0 maps, 6 independent constraints,
        // no homotopies from a degree-0 stalk.
        let pr = params(5, 4);
        let comps = build_tilting_complex(&pr, &[0, 1, 3]).unwrap();
        let hk = hom_k(&comps[0], &comps[2]);
        assert_eq!(hk.raw_dim, 6);
        assert_eq!(hk.null_dim, 0);
        assert_eq!(hk.dim, 6);
    }

    #[test]
    fn chain_map_space_vectors_satisfy_the_condition_algebraically() {
        for (p, r, i0) in [
            (5u64, 4u64, vec![0u64, 1, 3]),
            (3, 8, vec![0]),
            (5, 4, vec![0]),
            (3, 4, vec![1, 2]),
        ] {
            let pr = params(p, r);
            let comps = build_tilting_complex(&pr, &i0).unwrap();
            for ci in &comps {
                for cj in &comps {
                    let space = PairSpace::new(ci, cj);
                    for v in &space.raw_basis {
                        let f = space.layout.unflatten(v);
                        assert!(f.is_chain_map());
                        assert_eq!(space.layout.flatten(&f), *v);
                    }
                    for v in space.null.basis() {
                        let f = space.layout.unflatten(v);
                        assert!(f.is_chain_map());
                        assert!(is_null_homotopic(&f));
                    }
                }
            }
        }
    }

    #[test]
    fn disjoint_components_have_no_maps() {
        let pr = params(3, 8);
        let comps = build_tilting_complex(&pr, &[0]).unwrap();
        // Degree-0 stalk to degree-1 stalk: no slots at all.
        let hk = hom_k(&comps[0], &comps[4]);
        assert_eq!(hk.raw_dim, 0);
        assert_eq!(hk.dim, 0);
    }

    #[test]
    fn dimensions_survive_reversed_coordinate_order() {
        let pr = params(5, 4);
        let comps = build_tilting_complex(&pr, &[0, 1, 3]).unwrap();
        for ci in &comps {
            for cj in &comps {
                let fwd = PairSpace::new(ci, cj);
                let rev =
                    PairSpace::with_layout(CoordLayout::new_reversed(ci, cj));
                assert_eq!(fwd.raw_dim(), rev.raw_dim());
                assert_eq!(fwd.null_dim(), rev.null_dim());
                assert_eq!(fwd.dim(), rev.dim());
            }
        }
    }

    #[test]
    fn composition_of_chain_maps_is_a_chain_map() {
        let pr = params(5, 4);
        let comps = build_tilting_complex(&pr, &[0, 1, 3]).unwrap();
        let pi = {
            let mut m = ChainMap::zero(&comps[2], &comps[1]);
            m.f0[0][0] = Element::monomial(&pr, 0, 0, 1, 1);
            m
        };
        let gamma = {
            let mut m = ChainMap::zero(&comps[1], &comps[0]);
            m.f0[0][0] = Element::monomial(&pr, 0, 1, 0, 1);
            m
        };
        let comp = pi.then(&gamma);
        assert!(comp.is_chain_map());
        assert_eq!(comp.src.index, 2);
        assert_eq!(comp.tgt.index, 0);
        assert_eq!(comp.f0[0][0], Element::monomial(&pr, 0, 1, 0, 1));
        assert!(comp.f0[1][0].is_zero());
    }

    #[test]
    fn shifted_homs_vanish_for_the_p5_r4_example() {
        let pr = params(5, 4);
        let comps = build_tilting_complex(&pr, &[0, 1, 3]).unwrap();
        for ci in &comps {
            for cj in &comps {
                assert_eq!(shifted_hom_dim(ci, cj, 1), 0);
                assert_eq!(shifted_hom_dim(ci, cj, -1), 0);
                assert_eq!(shifted_hom_dim(ci, cj, 2), 0);
                assert_eq!(shifted_hom_dim(ci, cj, -3), 0);
            }
        }
    }

    #[test]
    fn verify_tilting_passes_on_small_configurations() {
        for (p, r) in [(3u64, 2u64), (3, 4), (5, 4), (3, 5)] {
            let pr = params(p, r);
            for mask in 1..(1u64 << r) - 1 {
                let i0: Vec<u64> = (0..r).filter(|&t| mask >> t & 1 == 1).collect();
                let comps = build_tilting_complex(&pr, &i0).unwrap();
                let report = verify_tilting(&comps);
                assert!(
                    report.passed(),
                    "tilting check failed at p={p} r={r} i0={i0:?}: {:?}",
                    report.shift_failures
                );
                assert!(report.k0_check_is_necessary_only);
            }
        }
    }

    #[test]
    fn duality_preserves_hom_dimensions() {
        let pr = params(3, 5);
        let i0 = vec![0u64, 1];
        let dual = dual_i0(&pr, &i0);
        assert_eq!(dual, vec![0, 4]);
        let comps = build_tilting_complex(&pr, &i0).unwrap();
        let dcomps = build_tilting_complex(&pr, &dual).unwrap();
        for i in 0..5u64 {
            for j in 0..5u64 {
                let di = pr.ovr(-(i as i64)) as usize;
                let dj = pr.ovr(-(j as i64)) as usize;
                assert_eq!(
                    hom_k(&comps[i as usize], &comps[j as usize]).dim,
                    hom_k(&dcomps[di], &dcomps[dj]).dim,
                    "mismatch at ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn k0_matrix_of_the_p5_r4_example() {
        let pr = params(5, 4);
        let comps = build_tilting_complex(&pr, &[0, 1, 3]).unwrap();
        let m = k0_matrix(&comps);
        // Rows 0, 1, 3 are unit vectors; row 2 is [P1] + [P3] - [P2].
        assert_eq!(m[0 * 4 + 0], 1);
        assert_eq!(&m[2 * 4..3 * 4], &[0, 1, -1, 1]);
        let det = fp::det_bareiss(4, &m);
        assert_eq!(det.abs(), 1);
    }
}
