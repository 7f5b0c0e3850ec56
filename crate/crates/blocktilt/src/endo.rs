//! The endomorphism algebra of a tilting complex, computed exactly.
//!
//! Elements are homotopy classes of chain self-maps of `T = T_0 (+) ... (+)
//! T_{r-1}`, graded by ordered component pairs: block `(i, j)` holds the
//! classes of maps `T_i -> T_j`.  Every class is stored as a coordinate
//! vector over a fixed representative basis of its block, and all products
//! are tabulated once per algebra through genuine chain-map composition
//! followed by reduction modulo null-homotopic maps.
//!
//! On top of the multiplication table the module computes:
//!
//! * the Jacobson radical, by two independent routes that must agree —
//!   an iterated characteristic-`p` trace filtration, and the local
//!   singular-shift description (off-diagonal blocks plus the non-units of
//!   each diagonal block) — certified afterwards by nilpotency and by the
//!   codimension count;
//! * the quiver: vertices are the components, and the arrow count from `i`
//!   to `j` is the dimension of block `(i, j)` of `rad / rad^2`;
//! * the Cartan matrix `C[i][j] = dim hom_K(T_i, T_j)` and its exact
//!   integer determinant;
//! * generation closures: how much of the algebra is reached by repeatedly
//!   composing the identity classes with the named catalog maps.

use std::collections::HashMap;

use crate::algebra::{BlockParams, Quiver};
use crate::catalog;
use crate::fp::{self, Mat, RowSpace, SpanSolver};
use crate::tilt::{build_tilting_complex, ArcDecomposition, ChainMap, I0Error, PairSpace, TiltComponent};

/// The endomorphism algebra of a list of tilting components, with a frozen
/// class basis per block and a full multiplication table.
pub struct EndoAlgebra {
    params: BlockParams,
    components: Vec<TiltComponent>,
    spaces: Vec<Vec<PairSpace>>,
    reps: Vec<Vec<Vec<ChainMap>>>,
    class_solvers: Vec<Vec<SpanSolver>>,
    dims: Vec<Vec<usize>>,
    dim: usize,
    /// `products[(i, j, k)][g][h]` holds the class coordinates in block
    /// `(i, k)` of the composite "representative `g` of `(i, j)` followed by
    /// representative `h` of `(j, k)`".  Pairs with an empty factor are not
    /// stored; their products are zero.
    products: HashMap<(usize, usize, usize), Vec<Vec<Vec<u64>>>>,
    identity_classes: Vec<Vec<u64>>,
}

/// The Jacobson radical and its square, blockwise in class coordinates.
pub struct RadicalData {
    pub blocks: Vec<Vec<RowSpace>>,
    pub square: Vec<Vec<RowSpace>>,
}

impl RadicalData {
    pub fn dim(&self) -> usize {
        self.blocks.iter().flatten().map(|s| s.dim()).sum()
    }

    pub fn square_dim(&self) -> usize {
        self.square.iter().flatten().map(|s| s.dim()).sum()
    }

    pub fn block_dim(&self, i: usize, j: usize) -> usize {
        self.blocks[i][j].dim()
    }

    pub fn square_block_dim(&self, i: usize, j: usize) -> usize {
        self.square[i][j].dim()
    }
}

/// Outcome of the composition-generation closure: for every block, the full
/// class dimension and the dimension reached from the seed maps, together
/// with the number of closure rounds that were needed before the reached
/// dimensions stopped growing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationReport {
    pub full: Vec<Vec<usize>>,
    pub generated: Vec<Vec<usize>>,
    pub rounds: usize,
}

impl GenerationReport {
    /// True when the seeds generate every block completely.
    pub fn complete(&self) -> bool {
        self.full == self.generated
    }

    /// Blocks that were not fully generated, as `(src, tgt, generated,
    /// full)`.
    pub fn deficits(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.full.iter().enumerate() {
            for (j, &full) in row.iter().enumerate() {
                let got = self.generated[i][j];
                if got != full {
                    out.push((i, j, got, full));
                }
            }
        }
        out
    }
}

/// Builds the endomorphism algebra of the tilting complex attached to the
/// selected residues.
pub fn endo_of_selection(params: &BlockParams, i0: &[u64]) -> Result<EndoAlgebra, I0Error> {
    let components = build_tilting_complex(params, i0)?;
    Ok(EndoAlgebra::new(params, components))
}

/// Builds the endomorphism algebra of the direct sum of all projectives,
/// each placed as a degree-0 stalk.  The chain-level machinery degenerates
/// to plain module homomorphisms here, so every invariant must reproduce
/// the module-level answer; this is the standing calibration harness.
pub fn projective_endo(params: &BlockParams) -> EndoAlgebra {
    let components = (0..params.r())
        .map(|t| TiltComponent::stalk(params, t))
        .collect();
    EndoAlgebra::new(params, components)
}

impl EndoAlgebra {
    pub fn new(params: &BlockParams, components: Vec<TiltComponent>) -> EndoAlgebra {
        Self::build(params, components, false)
    }

    /// Same algebra, but with every block's representative basis re-mixed
    /// by a fixed unimodular change (reversal, one addition, one unit
    /// scaling).  Class coordinates differ from [`EndoAlgebra::new`], while
    /// every reported invariant — dimensions, radical layers, quiver,
    /// Cartan data, generation outcomes — must be identical.
    pub fn new_shuffled(params: &BlockParams, components: Vec<TiltComponent>) -> EndoAlgebra {
        Self::build(params, components, true)
    }

    fn build(params: &BlockParams, components: Vec<TiltComponent>, shuffle: bool) -> EndoAlgebra {
        let p = params.p();
        let n = components.len();
        assert!(n > 0, "an endomorphism algebra needs at least one component");

        let mut spaces: Vec<Vec<PairSpace>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                row.push(PairSpace::new(&components[i], &components[j]));
            }
            spaces.push(row);
        }

        let mut reps: Vec<Vec<Vec<ChainMap>>> = Vec::with_capacity(n);
        let mut class_solvers: Vec<Vec<SpanSolver>> = Vec::with_capacity(n);
        let mut dims = vec![vec![0usize; n]; n];
        for i in 0..n {
            let mut rep_row = Vec::with_capacity(n);
            let mut solver_row = Vec::with_capacity(n);
            for j in 0..n {
                let space = &spaces[i][j];
                let mut vecs = space.rep_vectors.clone();
                if shuffle {
                    shuffle_vectors(p, &mut vecs);
                }
                // Classes are extracted in two steps: reduce modulo the
                // null maps, then express in the reduced representative
                // images.  The images must stay independent for the
                // extraction to be well defined.
                let residues: Vec<Vec<u64>> =
                    vecs.iter().map(|v| space.null.reduce(v)).collect();
                let solver = SpanSolver::new(p, space.layout.dim(), &residues);
                assert_eq!(
                    solver.dim(),
                    vecs.len(),
                    "representatives must stay independent modulo null maps"
                );
                dims[i][j] = vecs.len();
                rep_row.push(
                    vecs.iter()
                        .map(|v| space.layout.unflatten(v))
                        .collect::<Vec<_>>(),
                );
                solver_row.push(solver);
            }
            reps.push(rep_row);
            class_solvers.push(solver_row);
        }
        let dim = dims.iter().flatten().sum();

        let mut algebra = EndoAlgebra {
            params: *params,
            components,
            spaces,
            reps,
            class_solvers,
            dims,
            dim,
            products: HashMap::new(),
            identity_classes: Vec::new(),
        };
        algebra.tabulate_products();
        algebra.identity_classes = (0..n)
            .map(|i| {
                let idm = ChainMap::identity(&algebra.components[i]);
                algebra.class_in_block(i, i, &idm)
            })
            .collect();
        algebra
    }

    fn tabulate_products(&mut self) {
        let n = self.components.len();
        for i in 0..n {
            for j in 0..n {
                if self.dims[i][j] == 0 {
                    continue;
                }
                for k in 0..n {
                    if self.dims[j][k] == 0 {
                        continue;
                    }
                    let mut table = Vec::with_capacity(self.dims[i][j]);
                    for g in 0..self.dims[i][j] {
                        let mut row = Vec::with_capacity(self.dims[j][k]);
                        for h in 0..self.dims[j][k] {
                            let comp = self.reps[i][j][g].then(&self.reps[j][k][h]);
                            debug_assert!(comp.is_chain_map());
                            row.push(self.class_in_block(i, k, &comp));
                        }
                        table.push(row);
                    }
                    self.products.insert((i, j, k), table);
                }
            }
        }
    }

    pub fn params(&self) -> &BlockParams {
        &self.params
    }

    pub fn components(&self) -> &[TiltComponent] {
        &self.components
    }

    /// Total dimension over `Z/p`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Class dimension of block `(i, j)`, i.e. `dim hom_K(T_i, T_j)`.
    pub fn block_dim(&self, i: usize, j: usize) -> usize {
        self.dims[i][j]
    }

    pub fn block_dims(&self) -> &Vec<Vec<usize>> {
        &self.dims
    }

    /// The `g`-th representative chain map of block `(i, j)`.
    pub fn rep(&self, i: usize, j: usize, g: usize) -> &ChainMap {
        &self.reps[i][j][g]
    }

    /// Class coordinates of the identity of `T_i` in block `(i, i)`.
    pub fn identity_class(&self, i: usize) -> &[u64] {
        &self.identity_classes[i]
    }

    /// Component position carrying residue `t`.
    pub fn position(&self, t: u64) -> usize {
        self.components
            .iter()
            .position(|c| c.index == t)
            .expect("every residue is carried by exactly one component")
    }

    /// Block of a chain map between components of this algebra.
    pub fn block_of(&self, f: &ChainMap) -> (usize, usize) {
        (self.position(f.src.index), self.position(f.tgt.index))
    }

    /// Class coordinates of a chain map in its block.
    pub fn class_of(&self, f: &ChainMap) -> Vec<u64> {
        let (i, k) = self.block_of(f);
        self.class_in_block(i, k, f)
    }

    fn class_in_block(&self, i: usize, k: usize, f: &ChainMap) -> Vec<u64> {
        assert!(f.is_chain_map(), "only chain maps carry classes");
        let space = &self.spaces[i][k];
        let flat = space.layout.flatten(f);
        let residue = space.null.reduce(&flat);
        if self.dims[i][k] == 0 {
            assert!(
                residue.iter().all(|&c| c == 0),
                "a chain map escaped the recorded hom space"
            );
            return Vec::new();
        }
        self.class_solvers[i][k]
            .express(&residue)
            .expect("chain-map classes lie in the representative span")
    }

    /// Product of class vectors: `a` in block `(i, j)` followed by `b` in
    /// block `(j, k)`; the result lives in block `(i, k)`.
    pub fn product(&self, i: usize, j: usize, k: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.params.p();
        let mut out = vec![0u64; self.dims[i][k]];
        let Some(table) = self.products.get(&(i, j, k)) else {
            return out;
        };
        for (g, &ag) in a.iter().enumerate() {
            if ag == 0 {
                continue;
            }
            for (h, &bh) in b.iter().enumerate() {
                if bh == 0 {
                    continue;
                }
                let c = fp::mul(p, ag, bh);
                for (o, &t) in out.iter_mut().zip(table[g][h].iter()) {
                    *o = fp::add(p, *o, fp::mul(p, c, t));
                }
            }
        }
        out
    }

    /// The Jacobson radical with its square, computed by the iterated
    /// trace filtration and cross-checked against the local singular-shift
    /// route; the result is certified nilpotent and of codimension equal
    /// to the number of components.  Any disagreement panics.
    pub fn radical(&self) -> RadicalData {
        let n = self.components.len();
        let blocks = self.radical_by_iterated_traces();
        let rad_dim: usize = blocks.iter().flatten().map(|s| s.dim()).sum();
        assert_eq!(
            self.dim - rad_dim,
            n,
            "the radical must have codimension equal to the number of components"
        );

        let square = self.span_products(&blocks, &blocks);
        for i in 0..n {
            for k in 0..n {
                for v in square[i][k].basis() {
                    assert!(
                        blocks[i][k].contains(v),
                        "the radical square must lie inside the radical"
                    );
                }
            }
        }

        // Nilpotency: keep multiplying by the radical until the power
        // vanishes.  Together with the codimension count this pins the
        // computed space down as the radical itself: a nilpotent
        // subalgebra consists of nilpotents, nilpotents map to zero in the
        // split semisimple quotient, and the dimensions then force
        // equality.
        let mut power = square.clone();
        let mut steps = 2usize;
        while power.iter().flatten().map(|s| s.dim()).sum::<usize>() > 0 {
            steps += 1;
            assert!(
                steps <= self.dim + 1,
                "the radical candidate must be nilpotent"
            );
            power = self.span_products(&power, &blocks);
        }

        let alt = self.radical_by_local_nonunits();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(
                    blocks[i][j].dim(),
                    alt[i][j].dim(),
                    "both radical routes must agree on block ({i}, {j})"
                );
                for v in alt[i][j].basis() {
                    assert!(
                        blocks[i][j].contains(v),
                        "both radical routes must span the same space"
                    );
                }
            }
        }

        RadicalData { blocks, square }
    }

    /// Route one: the iterated characteristic-`p` trace filtration.
    ///
    /// Starting from the whole algebra, stage `s` keeps exactly the
    /// elements `x` whose pairing `trace((L_x L_y)^(p^s))`, read in a fixed
    /// integer lift modulo `p^(s+1)`, vanishes against every `y` kept by
    /// the previous stage; after the last stage with `p^s <= dim` the
    /// surviving space is the radical.  Left multiplications act blockwise,
    /// the pairing vanishes for structural reasons unless the blocks of
    /// `x` and `y` are mutually opposite, and the filtration respects the
    /// block grading, so each stage refines every block independently.
    fn radical_by_iterated_traces(&self) -> Vec<Vec<RowSpace>> {
        let p = self.params.p();
        let n = self.components.len();
        let mut v: Vec<Vec<RowSpace>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut s = RowSpace::new(p, self.dims[i][j]);
                        for g in 0..self.dims[i][j] {
                            let mut e = vec![0u64; self.dims[i][j]];
                            e[g] = 1;
                            s.insert(&e);
                        }
                        s
                    })
                    .collect()
            })
            .collect();

        let mut power = 1u64;
        while power <= self.dim as u64 {
            let modulus = power * p;
            v = self.trace_refine(&v, power, modulus);
            power *= p;
        }
        v
    }

    fn trace_refine(
        &self,
        v: &[Vec<RowSpace>],
        exponent: u64,
        modulus: u64,
    ) -> Vec<Vec<RowSpace>> {
        let p = self.params.p();
        let n = self.components.len();
        let mut out = Vec::with_capacity(n);
        for a in 0..n {
            let mut row = Vec::with_capacity(n);
            for b in 0..n {
                let xs = v[a][b].basis();
                let ys = v[b][a].basis();
                if xs.is_empty() || ys.is_empty() {
                    // Nothing to refine, or no constraints at all.
                    row.push(v[a][b].clone());
                    continue;
                }
                let mut pairings = vec![vec![0u64; xs.len()]; ys.len()];
                for (xi, x) in xs.iter().enumerate() {
                    for (yi, y) in ys.iter().enumerate() {
                        pairings[yi][xi] = self.trace_pairing(a, b, x, y, exponent, modulus);
                    }
                }
                // Combinations of the x-basis paired to zero against every
                // y: the kernel of the transposed pairing matrix.
                let combos = Mat::from_rows(p, &pairings).kernel();
                let mut refined = RowSpace::new(p, self.dims[a][b]);
                for combo in combos {
                    let mut vec_new = vec![0u64; self.dims[a][b]];
                    for (c, x) in combo.iter().zip(xs.iter()) {
                        if *c == 0 {
                            continue;
                        }
                        for (o, &xv) in vec_new.iter_mut().zip(x.iter()) {
                            *o = fp::add(p, *o, fp::mul(p, *c, xv));
                        }
                    }
                    refined.insert(&vec_new);
                }
                row.push(refined);
            }
            out.push(row);
        }
        out
    }

    /// One trace pairing `trace((L_x L_y)^exponent)` modulo `modulus`,
    /// divided by `exponent` and reduced modulo `p`.
    ///
    /// `L_x L_y` is left multiplication by `w = x * y`, which sits in a
    /// diagonal block and acts on each block `(a, d)` separately, so the
    /// big trace is the sum of small per-block traces.  The integer lift
    /// uses the canonical representatives of the tabulated structure
    /// constants; the result modulo `modulus` does not depend on that
    /// choice.
    fn trace_pairing(
        &self,
        a: usize,
        b: usize,
        x: &[u64],
        y: &[u64],
        exponent: u64,
        modulus: u64,
    ) -> u64 {
        let w = self.product(a, b, a, x, y);
        if w.iter().all(|&c| c == 0) {
            return 0;
        }
        let n = self.components.len();
        let mut total = 0u64;
        for d in 0..n {
            let m = self.dims[a][d];
            if m == 0 {
                continue;
            }
            let Some(table) = self.products.get(&(a, a, d)) else {
                continue;
            };
            let mut mat = vec![vec![0u64; m]; m];
            for (g, &wg) in w.iter().enumerate() {
                if wg == 0 {
                    continue;
                }
                for col in 0..m {
                    let coords = &table[g][col];
                    for (row, &c) in coords.iter().enumerate() {
                        mat[row][col] = (mat[row][col] + wg * c) % modulus;
                    }
                }
            }
            let powered = fp::mat_pow_mod(&mat, exponent, modulus);
            total = (total + fp::mat_trace_mod(&powered, modulus)) % modulus;
        }
        assert_eq!(
            total % exponent,
            0,
            "stage traces must be divisible by the stage power"
        );
        (total / exponent) % self.params.p()
    }

    /// Route two: off-diagonal blocks are radical outright, and inside
    /// each diagonal block the radical is the kernel of the scalar-residue
    /// functional, where the residue of a class is the unique scalar `c`
    /// such that left multiplication by `class - c * identity` on the
    /// block is singular.
    fn radical_by_local_nonunits(&self) -> Vec<Vec<RowSpace>> {
        let p = self.params.p();
        let n = self.components.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut s = RowSpace::new(p, self.dims[i][j]);
                if i != j {
                    for g in 0..self.dims[i][j] {
                        let mut e = vec![0u64; self.dims[i][j]];
                        e[g] = 1;
                        s.insert(&e);
                    }
                } else {
                    let m = self.dims[i][i];
                    let mut residues = Vec::with_capacity(m);
                    for g in 0..m {
                        let lam = self.left_mult_matrix(i, g);
                        let hits: Vec<u64> = (0..p)
                            .filter(|&c| {
                                let mut shifted = lam.clone();
                                for (d, rowv) in shifted.iter_mut().enumerate() {
                                    rowv[d] = fp::sub(p, rowv[d], c);
                                }
                                Mat::from_rows(p, &shifted).rank() < m
                            })
                            .collect();
                        assert_eq!(
                            hits.len(),
                            1,
                            "each diagonal class must have exactly one singular shift"
                        );
                        residues.push(hits[0]);
                    }
                    for combo in Mat::from_rows(p, &[residues]).kernel() {
                        s.insert(&combo);
                    }
                }
                row.push(s);
            }
            out.push(row);
        }
        out
    }

    /// Matrix of left multiplication by the `g`-th basis class of block
    /// `(i, i)` acting on that same block.
    fn left_mult_matrix(&self, i: usize, g: usize) -> Vec<Vec<u64>> {
        let m = self.dims[i][i];
        let table = self
            .products
            .get(&(i, i, i))
            .expect("diagonal blocks contain at least the identity");
        let mut mat = vec![vec![0u64; m]; m];
        for col in 0..m {
            for (row, &c) in table[g][col].iter().enumerate() {
                mat[row][col] = c;
            }
        }
        mat
    }

    /// Blockwise span of all products of two graded subspaces.
    fn span_products(
        &self,
        xs: &[Vec<RowSpace>],
        ys: &[Vec<RowSpace>],
    ) -> Vec<Vec<RowSpace>> {
        let p = self.params.p();
        let n = self.components.len();
        let mut out: Vec<Vec<RowSpace>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| RowSpace::new(p, self.dims[i][k]))
                    .collect()
            })
            .collect();
        for i in 0..n {
            for j in 0..n {
                if xs[i][j].dim() == 0 {
                    continue;
                }
                for k in 0..n {
                    if ys[j][k].dim() == 0 {
                        continue;
                    }
                    for x in xs[i][j].basis() {
                        for y in ys[j][k].basis() {
                            let prod = self.product(i, j, k, x, y);
                            out[i][k].insert(&prod);
                        }
                    }
                }
            }
        }
        out
    }

    /// The quiver read off the radical layers: `mult[i][j]` counts the
    /// arrows from component `i` to component `j`, the class dimension of
    /// block `(i, j)` of `rad / rad^2`.
    pub fn quiver(&self, rad: &RadicalData) -> Quiver {
        let n = self.components.len();
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (rad.block_dim(i, j) - rad.square_block_dim(i, j)) as u64)
                    .collect()
            })
            .collect();
        Quiver { n, mult }
    }

    /// Cartan matrix `C[i][j] = dim hom_K(T_i, T_j)`.
    pub fn cartan(&self) -> Vec<Vec<i128>> {
        self.dims
            .iter()
            .map(|row| row.iter().map(|&d| d as i128).collect())
            .collect()
    }

    /// Exact integer determinant of the Cartan matrix.
    pub fn cartan_det(&self) -> i128 {
        let n = self.components.len();
        let flat: Vec<i128> = self.cartan().into_iter().flatten().collect();
        fp::det_bareiss(n, &flat)
    }

    /// Closes the identity classes and all catalog maps of the selection
    /// under composition and reports the reached block dimensions.
    pub fn generation(&self, dec: &ArcDecomposition) -> GenerationReport {
        let p = self.params.p();
        let n = self.components.len();
        let mut spans: Vec<Vec<RowSpace>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| RowSpace::new(p, self.dims[i][j]))
                    .collect()
            })
            .collect();
        for i in 0..n {
            spans[i][i].insert(&self.identity_classes[i]);
        }
        for id in catalog::all_ids(dec) {
            let inst = catalog::build_map(dec, &id).expect("enumerated catalog entries build");
            let (i, k) = self.block_of(&inst.map);
            let class = self.class_in_block(i, k, &inst.map);
            if !class.is_empty() {
                spans[i][k].insert(&class);
            }
        }
        let mut rounds = 0usize;
        loop {
            let mut grew = false;
            for i in 0..n {
                for j in 0..n {
                    if spans[i][j].dim() == 0 {
                        continue;
                    }
                    for k in 0..n {
                        if spans[j][k].dim() == 0 {
                            continue;
                        }
                        let xs: Vec<Vec<u64>> = spans[i][j].basis().to_vec();
                        let ys: Vec<Vec<u64>> = spans[j][k].basis().to_vec();
                        for x in &xs {
                            for y in &ys {
                                let prod = self.product(i, j, k, x, y);
                                grew |= spans[i][k].insert(&prod);
                            }
                        }
                    }
                }
            }
            if !grew {
                break;
            }
            rounds += 1;
        }
        GenerationReport {
            full: self.dims.clone(),
            generated: spans
                .iter()
                .map(|row| row.iter().map(|s| s.dim()).collect())
                .collect(),
            rounds,
        }
    }
}

/// Deterministic unimodular re-mix of a representative list: reverse the
/// order, add the new first vector to the new second one, and scale the
/// last by two (a unit for every odd `p`).
fn shuffle_vectors(p: u64, vecs: &mut [Vec<u64>]) {
    if vecs.is_empty() {
        return;
    }
    vecs.reverse();
    if vecs.len() >= 2 {
        let first = vecs[0].clone();
        for (s, f) in vecs[1].iter_mut().zip(first.iter()) {
            *s = fp::add(p, *s, *f);
        }
    }
    let last = vecs.last_mut().expect("nonempty");
    for c in last.iter_mut() {
        *c = fp::mul(p, *c, 2);
    }
}
