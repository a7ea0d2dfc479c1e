//! The four flags `[0], [D], [0*], [D*]` of a Leonard system, the
//! decompositions `[zw]` they induce, and the action of the switching
//! element and of four group commutators on them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{Field, Matrix, Scalar, Subspace};
use crate::error::Error;
use crate::outcome::{for_each_index, Outcome};
use crate::realization::{NamedOutcome, Realization, System};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FlagLabel {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "D")]
    D,
    #[serde(rename = "0*")]
    ZeroStar,
    #[serde(rename = "D*")]
    DStar,
}

impl FlagLabel {
    pub const ALL: [FlagLabel; 4] = [FlagLabel::Zero, FlagLabel::D, FlagLabel::ZeroStar, FlagLabel::DStar];

    pub fn name(&self) -> &'static str {
        match self {
            FlagLabel::Zero => "0",
            FlagLabel::D => "D",
            FlagLabel::ZeroStar => "0*",
            FlagLabel::DStar => "D*",
        }
    }

    fn index(&self) -> usize {
        *self as usize
    }
}

impl fmt::Display for FlagLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FlagLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<FlagLabel, Error> {
        FlagLabel::ALL
            .into_iter()
            .find(|l| l.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown flag label {s:?}")))
    }
}

/// Nested subspaces, component `i` of dimension `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    components: Vec<Subspace>,
}

impl Flag {
    pub fn new(components: Vec<Subspace>) -> Flag {
        Flag { components }
    }

    pub fn components(&self) -> &[Subspace] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Subspace {
        &self.components[i]
    }

    /// Dimensions `1, 2, ..., d+1` and each component inside the next.
    pub fn is_flag(&self) -> bool {
        self.components.iter().enumerate().all(|(i, c)| c.dim() == i + 1)
            && self.components.windows(2).all(|w| w[0].is_subspace_of(&w[1]))
    }

    pub fn image(&self, x: &Matrix) -> Flag {
        Flag { components: self.components.iter().map(|c| c.image(x)).collect() }
    }
}

/// A sequence of lines whose direct sum is the whole space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    components: Vec<Subspace>,
}

impl Decomposition {
    pub fn new(components: Vec<Subspace>) -> Decomposition {
        Decomposition { components }
    }

    pub fn components(&self) -> &[Subspace] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Subspace {
        &self.components[i]
    }

    pub fn inversion(&self) -> Decomposition {
        Decomposition { components: self.components.iter().rev().cloned().collect() }
    }

    pub fn image(&self, x: &Matrix) -> Decomposition {
        Decomposition { components: self.components.iter().map(|c| c.image(x)).collect() }
    }

    /// Every component a line and the lines spanning the space.
    pub fn is_decomposition(&self) -> bool {
        let Some(first) = self.components.first() else { return false };
        let n = first.ambient();
        if self.components.len() != n || self.components.iter().any(|c| c.dim() != 1) {
            return false;
        }
        let vs: Vec<Vec<Scalar>> = self.components.iter().map(|c| c.basis_vector(0)).collect();
        Subspace::spanned_by(first.field(), n, &vs).dim() == n
    }

    /// Partial sums `V_0 + ... + V_i`.
    pub fn induced_flag(&self) -> Flag {
        let mut acc = self.components[0].clone();
        let mut out = vec![acc.clone()];
        for c in &self.components[1..] {
            acc = acc.sum(c).expect("components share the ambient space");
            out.push(acc.clone());
        }
        Flag { components: out }
    }
}

/// The pairs whose decompositions are stored; the other six ordered pairs
/// are their inversions.
pub const CACHED_PAIRS: [(FlagLabel, FlagLabel); 6] = [
    (FlagLabel::Zero, FlagLabel::D),
    (FlagLabel::ZeroStar, FlagLabel::DStar),
    (FlagLabel::ZeroStar, FlagLabel::D),
    (FlagLabel::DStar, FlagLabel::D),
    (FlagLabel::ZeroStar, FlagLabel::Zero),
    (FlagLabel::DStar, FlagLabel::Zero),
];

/// Flags and decompositions of one system.
#[derive(Clone, Debug)]
pub struct Geometry {
    field: Field,
    d: usize,
    flags: [Flag; 4],
    decompositions: BTreeMap<(FlagLabel, FlagLabel), Decomposition>,
}

fn partial_sums(idem: &[Matrix], reversed: bool) -> Flag {
    let order: Vec<&Matrix> = if reversed { idem.iter().rev().collect() } else { idem.iter().collect() };
    let mut acc = Matrix::zeros(idem[0].field(), idem[0].rows(), idem[0].cols());
    let mut out = Vec::with_capacity(idem.len());
    for e in order {
        acc = &acc + e;
        out.push(acc.column_space());
    }
    Flag { components: out }
}

impl Geometry {
    pub fn new(system: &System) -> Result<Geometry, Error> {
        let d = system.d();
        let field = system.first().field();
        let flags = [
            partial_sums(system.first_idempotents(), false),
            partial_sums(system.first_idempotents(), true),
            partial_sums(system.second_idempotents(), false),
            partial_sums(system.second_idempotents(), true),
        ];
        let mut geo = Geometry { field, d, flags, decompositions: BTreeMap::new() };
        for (z, w) in CACHED_PAIRS {
            let dec = geo.intersect_pair(z, w)?;
            geo.decompositions.insert((z, w), dec);
        }
        Ok(geo)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn flag(&self, z: FlagLabel) -> &Flag {
        &self.flags[z.index()]
    }

    fn intersect_pair(&self, z: FlagLabel, w: FlagLabel) -> Result<Decomposition, Error> {
        let (fz, fw) = (self.flag(z), self.flag(w));
        let comps = (0..=self.d)
            .map(|i| fz.component(i).intersect(fw.component(self.d - i)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Decomposition { components: comps })
    }

    /// `[zw]_i = [z]_i ∩ [w]_{d-i}`.
    pub fn decomposition(&self, z: FlagLabel, w: FlagLabel) -> Result<Decomposition, Error> {
        if z == w {
            return Err(Error::NotApplicable(format!("decomposition [{z}{w}] needs two distinct flags")));
        }
        if let Some(dec) = self.decompositions.get(&(z, w)) {
            return Ok(dec.clone());
        }
        Ok(self.decompositions[&(w, z)].inversion())
    }

    /// All pairs in a fixed order: `z` before `w` in [`FlagLabel::ALL`].
    pub fn unordered_pairs() -> Vec<(FlagLabel, FlagLabel)> {
        let mut out = Vec::new();
        for (a, z) in FlagLabel::ALL.iter().enumerate() {
            for w in &FlagLabel::ALL[a + 1..] {
                out.push((*z, *w));
            }
        }
        out
    }

    pub fn ordered_pairs() -> Vec<(FlagLabel, FlagLabel)> {
        let mut out = Vec::new();
        for z in FlagLabel::ALL {
            for w in FlagLabel::ALL {
                if z != w {
                    out.push((z, w));
                }
            }
        }
        out
    }
}

fn dec(geo: &Geometry, z: FlagLabel, w: FlagLabel) -> Decomposition {
    geo.decomposition(z, w).expect("labels are distinct")
}

/// Each flag is a flag, has full top component, and agrees with its
/// polynomial description (`[0]_i = eta_{d-i}(A) V` and so on).
pub fn flag_components_check(real: &Realization, geo: &Geometry) -> Outcome {
    let d = real.d();
    let structure = Outcome::all(FlagLabel::ALL.map(|z| {
        let f = geo.flag(z);
        Outcome::check(f.is_flag(), || format!("[{z}] is not a flag"))
    }));
    if structure.failed() {
        return structure;
    }
    Outcome::all(FlagLabel::ALL.map(|z| {
        for_each_index(0..=d, |i| {
            let m = match z {
                FlagLabel::Zero => real.eta_a(d - i),
                FlagLabel::D => real.tau_a(d - i),
                FlagLabel::ZeroStar => real.eta_as(d - i),
                FlagLabel::DStar => real.tau_as(d - i),
            };
            Outcome::subspaces(geo.flag(z).component(i), &m.column_space())
        })
        .at(format!("[{z}]"))
    }))
}

/// `[z]_i ∩ [w]_j = 0` whenever `i + j < d`, for every pair of flags.
pub fn opposition_check(geo: &Geometry) -> Outcome {
    let d = geo.d();
    Outcome::all(Geometry::unordered_pairs().into_iter().map(|(z, w)| {
        let mut out = Outcome::Pass;
        'outer: for i in 0..d {
            for j in 0..d - i {
                let cap = geo.flag(z).component(i).intersect(geo.flag(w).component(j)).expect("same ambient");
                if !cap.is_zero() {
                    out = Outcome::Fail(format!("[{z}]_{i} ∩ [{w}]_{j} has dimension {}", cap.dim()));
                    break 'outer;
                }
            }
        }
        out
    }))
}

/// For all twelve ordered pairs: `[zw]` is a decomposition, it is the
/// inversion of `[wz]`, it induces `[z]` and its inversion induces `[w]`.
/// Also `[0D]_i = E_i V` and `[0*D*]_i = E*_i V`.
pub fn decomposition_structure_check(system: &System, geo: &Geometry) -> Outcome {
    let pairs = Geometry::ordered_pairs().into_iter().map(|(z, w)| {
        let zw = dec(geo, z, w);
        let wz = dec(geo, w, z);
        let tag = format!("[{z}{w}]");
        if !zw.is_decomposition() {
            return Outcome::Fail(format!("{tag} is not a decomposition"));
        }
        if zw != wz.inversion() {
            return Outcome::Fail(format!("{tag} is not the inversion of [{w}{z}]"));
        }
        if &zw.induced_flag() != geo.flag(z) {
            return Outcome::Fail(format!("{tag} does not induce [{z}]"));
        }
        Outcome::check(&zw.inversion().induced_flag() == geo.flag(w), || {
            format!("the inversion of {tag} does not induce [{w}]")
        })
    });
    let eigen = |z, w, idem: &[Matrix]| {
        let dz = dec(geo, z, w);
        for_each_index(0..idem.len(), |i| Outcome::subspaces(dz.component(i), &idem[i].column_space()))
            .at(format!("[{z}{w}]"))
    };
    Outcome::all(pairs.chain([
        eigen(FlagLabel::Zero, FlagLabel::D, system.first_idempotents()),
        eigen(FlagLabel::ZeroStar, FlagLabel::DStar, system.second_idempotents()),
    ]))
}

/// The eight polynomial-image descriptions of the components of
/// `[0*D], [D*D], [0*0], [D*0]`.
pub fn split_components_check(real: &Realization, geo: &Geometry) -> Outcome {
    use FlagLabel::*;
    let d = real.d();
    let (e0, ed, es0, esd) = (real.e(0), real.e(d), real.e_star(0), real.e_star(d));
    type Desc<'a> = Box<dyn Fn(usize) -> (Matrix, Matrix) + 'a>;
    let cases: Vec<(FlagLabel, FlagLabel, Desc)> = vec![
        (ZeroStar, D, Box::new(|i| (real.tau_a(i) * es0, real.eta_as(d - i) * ed))),
        (DStar, D, Box::new(|i| (real.tau_a(i) * esd, real.tau_as(d - i) * ed))),
        (ZeroStar, Zero, Box::new(|i| (real.eta_a(i) * es0, real.eta_as(d - i) * e0))),
        (DStar, Zero, Box::new(|i| (real.eta_a(i) * esd, real.tau_as(d - i) * e0))),
    ];
    Outcome::all(cases.into_iter().map(|(z, w, f)| {
        let zw = dec(geo, z, w);
        for_each_index(0..=d, |i| {
            let (left, right) = f(i);
            Outcome::all([
                Outcome::subspaces(zw.component(i), &left.column_space()).at("first form"),
                Outcome::subspaces(zw.component(i), &right.column_space()).at("second form"),
            ])
        })
        .at(format!("[{z}{w}]"))
    }))
}

fn flags_map(geo: &Geometry, x: &Matrix, from: FlagLabel, to: FlagLabel) -> Outcome {
    Outcome::check(&geo.flag(from).image(x) == geo.flag(to), || {
        let f = geo.flag(from).image(x);
        let i = (0..=geo.d()).find(|&i| f.component(i) != geo.flag(to).component(i)).unwrap_or(0);
        format!("X[{from}] differs from [{to}] at component {i}")
    })
}

fn decomposition_map(geo: &Geometry, x: &Matrix, from: (FlagLabel, FlagLabel), to: (FlagLabel, FlagLabel)) -> Outcome {
    let src = dec(geo, from.0, from.1).image(x);
    let dst = dec(geo, to.0, to.1);
    let i = (0..=geo.d()).find(|&i| src.component(i) != dst.component(i));
    Outcome::check(i.is_none(), || {
        format!("X[{}{}] differs from [{}{}] at component {}", from.0, from.1, to.0, to.1, i.unwrap())
    })
}

/// `X[0] = [0]`, `X[D] = [D]`, `X[0*] = [D*]`, and `X[0D] = [0D]`.
pub fn flag_action_check(geo: &Geometry, x: &Matrix) -> Outcome {
    use FlagLabel::*;
    Outcome::all([
        flags_map(geo, x, Zero, Zero),
        flags_map(geo, x, D, D),
        flags_map(geo, x, ZeroStar, DStar),
        decomposition_map(geo, x, (Zero, D), (Zero, D)),
    ])
}

/// `X[0*0] = [D*0]` and `X[0*D] = [D*D]`.
pub fn decomposition_action_check(geo: &Geometry, x: &Matrix) -> Outcome {
    use FlagLabel::*;
    Outcome::all([
        decomposition_map(geo, x, (ZeroStar, Zero), (DStar, Zero)),
        decomposition_map(geo, x, (ZeroStar, D), (DStar, D)),
    ])
}

/// Vectors `y` with `y^T u = 0` for all `u` in `t`.
fn annihilator(t: &Subspace) -> Vec<Vec<Scalar>> {
    if t.is_zero() {
        return Subspace::full(t.field(), t.ambient()).basis_vectors();
    }
    t.basis().transpose().kernel().basis_vectors()
}

/// All `X` with `X src_i ⊆ dst_i` for every listed pair of subspaces, as a
/// subspace of the `n^2`-dimensional space of matrices (row-major).
fn containment_solutions(field: Field, n: usize, pairs: &[(&Subspace, &Subspace)]) -> Subspace {
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (src, dst) in pairs {
        let ann = annihilator(dst);
        for f in src.basis_vectors() {
            for y in &ann {
                let mut row = vec![field.zero(); n * n];
                for (r, yr) in y.iter().enumerate() {
                    if yr.is_zero() {
                        continue;
                    }
                    for (c, fc) in f.iter().enumerate() {
                        row[r * n + c] = yr * fc;
                    }
                }
                rows.push(row);
            }
        }
    }
    let mut m = Matrix::zeros(field, rows.len(), n * n);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            m.set(i, j, v);
        }
    }
    m.kernel()
}

fn flatten(x: &Matrix) -> Vec<Scalar> {
    x.to_rows().into_iter().flatten().collect()
}

fn solutions_are_span_of(solutions: &Subspace, x: &Matrix) -> Outcome {
    let want = Subspace::spanned_by(x.field(), x.rows() * x.rows(), &[flatten(x)]);
    Outcome::check(solutions == &want, || {
        format!("solution space has dimension {} (expected the line through S)", solutions.dim())
    })
}

/// Solves `X[0] ⊆ [0]`, `X[D] ⊆ [D]`, `X[0*] ⊆ [D*]` over all matrices `X`
/// and compares the solution space with the line through `s`.
pub fn flag_uniqueness_check(geo: &Geometry, s: &Matrix) -> Outcome {
    use FlagLabel::*;
    let mut pairs = Vec::new();
    for (from, to) in [(Zero, Zero), (D, D), (ZeroStar, DStar)] {
        for i in 0..=geo.d() {
            pairs.push((geo.flag(from).component(i), geo.flag(to).component(i)));
        }
    }
    solutions_are_span_of(&containment_solutions(geo.field(), geo.d() + 1, &pairs), s)
}

/// Solves `X[0*0] ⊆ [D*0]`, `X[0*D] ⊆ [D*D]` over all matrices `X`.
pub fn decomposition_uniqueness_check(geo: &Geometry, s: &Matrix) -> Outcome {
    use FlagLabel::*;
    let decs = [
        (dec(geo, ZeroStar, Zero), dec(geo, DStar, Zero)),
        (dec(geo, ZeroStar, D), dec(geo, DStar, D)),
    ];
    let mut pairs = Vec::new();
    for (from, to) in &decs {
        for i in 0..=geo.d() {
            pairs.push((from.component(i), to.component(i)));
        }
    }
    solutions_are_span_of(&containment_solutions(geo.field(), geo.d() + 1, &pairs), s)
}

/// `S + E_1` is a polynomial in `A` that is not a multiple of `S`, so it
/// must not send `[0*]` onto `[D*]`.
pub fn perturbation_check(real: &Realization, geo: &Geometry) -> Outcome {
    if real.d() == 0 {
        return Outcome::Skipped("no E_1 when d = 0".into());
    }
    let x = real.s() + real.e(1);
    let broken = flags_map(geo, &x, FlagLabel::ZeroStar, FlagLabel::DStar).failed();
    Outcome::check(broken, || "S + E_1 still maps [0*] onto [D*]".into())
}

/// The operators `S* S^-1 S*^-1 S`, `S* S S*^-1 S^-1`, `S*^-1 S^-1 S* S`,
/// `S*^-1 S S* S^-1` in that order.
pub fn commutators(real: &Realization) -> [Matrix; 4] {
    let (s, si, ss, ssi) = (real.s(), real.s_inv(), real.s_star(), real.s_star_inv());
    let word = |a: &Matrix, b: &Matrix, c: &Matrix, e: &Matrix| &(&(a * b) * c) * e;
    [word(ss, si, ssi, s), word(ss, s, ssi, si), word(ssi, si, ss, s), word(ssi, s, ss, si)]
}

/// The decomposition each commutator acts diagonally on.
pub const COMMUTATOR_DECOMPOSITIONS: [(FlagLabel, FlagLabel); 4] = [
    (FlagLabel::ZeroStar, FlagLabel::D),
    (FlagLabel::DStar, FlagLabel::D),
    (FlagLabel::ZeroStar, FlagLabel::Zero),
    (FlagLabel::DStar, FlagLabel::Zero),
];

/// The flags fixed by each commutator.
pub const COMMUTATOR_FLAGS: [[FlagLabel; 2]; 4] = [
    [FlagLabel::ZeroStar, FlagLabel::D],
    [FlagLabel::DStar, FlagLabel::D],
    [FlagLabel::ZeroStar, FlagLabel::Zero],
    [FlagLabel::DStar, FlagLabel::Zero],
];

/// Predicted eigenvalue of commutator `k` (0-based) on component `i`.
pub fn predicted_eigenvalue(real: &Realization, k: usize, i: usize) -> Scalar {
    let arr = real.array();
    let d = arr.d();
    let v = |lo: usize, hi: usize| arr.varphi_prod(lo, hi);
    let p = |lo: usize, hi: usize| arr.phi_prod(lo, hi);
    let (num, den) = match k {
        0 => (p(1, i) * v(1, d - i), v(1, i) * p(1, d - i)),
        1 => (v(d + 1 - i, d) * p(i + 1, d), p(d + 1 - i, d) * v(i + 1, d)),
        2 => (v(1, i) * p(1, d - i), p(1, i) * v(1, d - i)),
        3 => (p(d + 1 - i, d) * v(i + 1, d), v(d + 1 - i, d) * p(i + 1, d)),
        _ => panic!("there are four commutators"),
    };
    num.checked_div(&den).expect("split sequences are nonzero")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorSpectrum {
    /// `None` where the image of the component's basis vector is not a
    /// multiple of it.
    pub measured: Vec<Option<Scalar>>,
    pub predicted: Vec<Scalar>,
}

/// Applies each commutator to the echelon basis vector of each component of
/// its decomposition and reads off the scalar.
pub fn commutator_spectrum(real: &Realization, geo: &Geometry) -> [CommutatorSpectrum; 4] {
    let ts = commutators(real);
    let d = real.d();
    std::array::from_fn(|k| {
        let (z, w) = COMMUTATOR_DECOMPOSITIONS[k];
        let zw = dec(geo, z, w);
        let measured = (0..=d)
            .map(|i| {
                let v = zw.component(i).basis_vector(0);
                let img = ts[k].mul_vec(&v);
                let pivot = v.iter().position(|x| !x.is_zero())?;
                let lambda = &img[pivot] * &v[pivot].inv().ok()?;
                let proportional = img.iter().zip(&v).all(|(a, b)| a == &(&lambda * b));
                proportional.then_some(lambda)
            })
            .collect();
        let predicted = (0..=d).map(|i| predicted_eigenvalue(real, k, i)).collect();
        CommutatorSpectrum { measured, predicted }
    })
}

pub fn spectrum_outcome(spectrum: &CommutatorSpectrum) -> Outcome {
    for_each_index(0..spectrum.predicted.len(), |i| match &spectrum.measured[i] {
        None => Outcome::Fail("image is not proportional to the component".into()),
        Some(m) => Outcome::check(m == &spectrum.predicted[i], || format!("eigenvalue {m}, predicted {}", spectrum.predicted[i])),
    })
}

/// Each commutator fixes its two flags and its decomposition, and
/// `T_1 tau_i(A) E*_0 = eps_i tau_i(A) E*_0`.
pub fn commutator_checks(real: &Realization, geo: &Geometry) -> Vec<NamedOutcome> {
    let ts = commutators(real);
    let d = real.d();
    let fixes_flags = Outcome::all((0..4).map(|k| {
        Outcome::all(COMMUTATOR_FLAGS[k].map(|z| flags_map(geo, &ts[k], z, z))).at(format!("commutator {}", k + 1))
    }));
    let fixes_decs = Outcome::all((0..4).map(|k| {
        let zw = COMMUTATOR_DECOMPOSITIONS[k];
        decomposition_map(geo, &ts[k], zw, zw).at(format!("commutator {}", k + 1))
    }));
    let product = for_each_index(0..=d, |i| {
        let m = real.tau_a(i) * real.e_star(0);
        Outcome::matrices(&(&ts[0] * &m), &m.scale(&predicted_eigenvalue(real, 0, i)))
    });
    vec![
        ("commutator.fixes_flags".into(), fixes_flags),
        ("commutator.fixes_decompositions".into(), fixes_decs),
        ("commutator.product_identity".into(), product),
    ]
}

/// Whether all four commutators are the identity matrix.
pub fn commutators_are_identity(real: &Realization) -> Outcome {
    let id = Matrix::identity(real.field(), real.d() + 1);
    Outcome::all(
        commutators(real)
            .iter()
            .enumerate()
            .map(|(k, t)| Outcome::matrices(t, &id).at(format!("commutator {}", k + 1))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parameter_array::{D4Element, Generator, ParameterArray};
    use crate::realization::realize;

    const Q: Field = Field::Rational;

    fn k1() -> ParameterArray {
        ParameterArray::from_ints(Q, &[1, -1], &[1, -1], &[-2], &[2]).unwrap()
    }

    fn k2() -> ParameterArray {
        ParameterArray::from_ints(Q, &[2, 0, -2], &[2, 0, -2], &[-4, -4], &[4, 4]).unwrap()
    }

    fn span(vs: &[&[i64]]) -> Subspace {
        let vecs: Vec<Vec<Scalar>> = vs.iter().map(|v| v.iter().map(|&x| Q.from_i64(x)).collect()).collect();
        Subspace::spanned_by(Q, vs[0].len(), &vecs)
    }

    #[test]
    fn k1_flags_and_decompositions() {
        let r = realize(&k1()).unwrap();
        let geo = Geometry::new(r.system()).unwrap();
        assert_eq!(geo.flag(FlagLabel::ZeroStar).component(0), &span(&[&[1, 0]]));
        assert_eq!(geo.flag(FlagLabel::DStar).component(0), &span(&[&[1, 1]]));
        let zd = geo.decomposition(FlagLabel::ZeroStar, FlagLabel::D).unwrap();
        assert_eq!(zd.components(), &[span(&[&[1, 0]]), span(&[&[0, 1]])]);
        assert_eq!(geo.flag(FlagLabel::ZeroStar).image(r.s()).component(0), &span(&[&[1, 1]]));
        assert!(geo.decomposition(FlagLabel::D, FlagLabel::D).is_err());
    }

    #[test]
    fn all_checks_pass_on_desk_arrays() {
        let d0 = ParameterArray::from_ints(Q, &[5], &[7], &[], &[]).unwrap();
        for arr in [k1(), k2(), d0] {
            let r = realize(&arr).unwrap();
            let geo = Geometry::new(r.system()).unwrap();
            for top in FlagLabel::ALL {
                assert_eq!(geo.flag(top).component(arr.d()), &Subspace::full(Q, arr.d() + 1));
            }
            let mut all = vec![
                ("components", flag_components_check(&r, &geo)),
                ("opposition", opposition_check(&geo)),
                ("structure", decomposition_structure_check(r.system(), &geo)),
                ("split", split_components_check(&r, &geo)),
                ("flag action", flag_action_check(&geo, r.s())),
                ("dec action", decomposition_action_check(&geo, r.s())),
                ("flag unique", flag_uniqueness_check(&geo, r.s())),
                ("dec unique", decomposition_uniqueness_check(&geo, r.s())),
            ];
            if arr.d() > 0 {
                all.push(("perturb", perturbation_check(&r, &geo)));
            }
            for spectrum in commutator_spectrum(&r, &geo) {
                all.push(("spectrum", spectrum_outcome(&spectrum)));
            }
            for (name, o) in all {
                assert_eq!(o, Outcome::Pass, "{name} at d={}", arr.d());
            }
            for (name, o) in commutator_checks(&r, &geo) {
                assert_eq!(o, Outcome::Pass, "{name} at d={}", arr.d());
            }
        }
    }

    #[test]
    fn k1_commutator_is_minus_identity() {
        let r = realize(&k1()).unwrap();
        let minus = Matrix::identity(Q, 2).scale(&Q.from_i64(-1));
        assert_eq!(commutators(&r)[0], minus);
        assert!(commutators_are_identity(&r).failed());
        assert_eq!(commutators_are_identity(&realize(&k2()).unwrap()), Outcome::Pass);
    }

    #[test]
    fn down_relative_of_k2_acts_with_its_switching_element() {
        let r = realize(&k2()).unwrap();
        let g = D4Element::generator(Generator::Down);
        let geo = Geometry::new(&r.relative_system(g)).unwrap();
        let (s, _) = r.relative_switching(g);
        assert_eq!(decomposition_action_check(&geo, &s), Outcome::Pass);
        assert_eq!(flag_action_check(&geo, &s), Outcome::Pass);
    }

    #[test]
    fn identity_is_not_a_switching_element() {
        let r = realize(&k2()).unwrap();
        let geo = Geometry::new(r.system()).unwrap();
        let id = Matrix::identity(Q, 3);
        assert!(flag_action_check(&geo, &id).failed());
        assert!(flag_uniqueness_check(&geo, &id).failed());
    }
}
