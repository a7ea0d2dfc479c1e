//! The verification suite: every identity in this crate, run against one
//! parameter array and collected into a report.

pub mod fuzz;
pub mod io;
mod parallel;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{poly_apply, Matrix, Poly, Subspace};
use crate::error::Error;
use crate::flags::{self, Geometry};
use crate::outcome::{for_each_index, Outcome};
use crate::parameter_array::{
    apply_word, d4_apply, q_parameter, validate_pa, D4Element, Generator, ParameterArray, QParameter, ValidityReport,
};
use crate::realization::{
    bracket_routes, brackets_closed_form_check, compute_p_u_polys, mu_identities, realize, s_es0_identities,
    s_matrix_closed_form, s_star_matrix_closed_form, s_times_tau_relations, split_sequences_from_traces,
    switching_pair_of, BracketTable, NamedOutcome, PuPolys, Realization,
};
use crate::recognizer::{recognize, BidiagonalPair, Verdict};

pub use parallel::Execution;

/// Everything the checks share, computed once.
struct Context {
    real: Realization,
    routes: Vec<BracketTable>,
    geo: Geometry,
    pu: Result<PuPolys, Error>,
    pu_star: Result<PuPolys, Error>,
}

type CheckFn = fn(&Context) -> Vec<NamedOutcome>;

struct Check {
    keys: &'static [&'static str],
    run: CheckFn,
}

fn one(key: &str, o: Outcome) -> Vec<NamedOutcome> {
    vec![(key.to_string(), o)]
}

fn err_outcome(e: &Error) -> Outcome {
    Outcome::Fail(format!("error: {e}"))
}

fn d4_relations(c: &Context) -> Vec<NamedOutcome> {
    use Generator::*;
    let arr = c.real.array();
    let same = |x: &[Generator], y: &[Generator]| {
        let (l, r) = (apply_word(x, arr), apply_word(y, arr));
        Outcome::check(l == r, || format!("{x:?} and {y:?} give different arrays"))
    };
    let o = Outcome::all([
        same(&[Star, Star], &[]),
        same(&[Down, Down], &[]),
        same(&[DoubleDown, DoubleDown], &[]),
        same(&[DoubleDown, Star], &[Star, Down]),
        same(&[Down, Star], &[Star, DoubleDown]),
        same(&[Down, DoubleDown], &[DoubleDown, Down]),
    ]);
    one("d4.relations", o)
}

fn d4_orbit(c: &Context) -> Vec<NamedOutcome> {
    let arr = c.real.array();
    let mut orbit: Vec<ParameterArray> = Vec::new();
    let mut out = Outcome::Pass;
    for g in D4Element::all() {
        match d4_apply(g, arr) {
            Ok(x) => {
                if !validate_pa(&x).is_valid() {
                    out = Outcome::Fail(format!("relative {g} is not valid"));
                    break;
                }
                let word_image = apply_word(&g.word(), arr);
                if word_image != x {
                    out = Outcome::Fail(format!("relative {g} differs from its word"));
                    break;
                }
                if !orbit.contains(&x) {
                    orbit.push(x);
                }
            }
            Err(e) => {
                out = err_outcome(&e).at(g);
                break;
            }
        }
    }
    if out.passed() && 8 % orbit.len() != 0 {
        out = Outcome::Fail(format!("orbit has size {}", orbit.len()));
    }
    one("d4.orbit", out)
}

fn d4_relative_table(c: &Context) -> Vec<NamedOutcome> {
    let o = Outcome::all(D4Element::all().into_iter().map(|g| {
        let sys = c.real.relative_system(g);
        let (s, ss) = c.real.relative_switching(g);
        match switching_pair_of(&sys) {
            Err(e) => err_outcome(&e),
            Ok((arr_g, s_g, ss_g)) => {
                let want = d4_apply(g, c.real.array());
                Outcome::all([
                    Outcome::check(want.as_ref().ok() == Some(&arr_g), || "array of the relative".into()),
                    Outcome::matrices(&s_g, &s).at("switching element"),
                    Outcome::matrices(&ss_g, &ss).at("dual switching element"),
                ])
            }
        }
        .at(format!("relative {g}"))
    }));
    one("d4.relative_switching_table", o)
}

fn idempotent_laws(c: &Context) -> Vec<NamedOutcome> {
    let r = &c.real;
    let n = r.d() + 1;
    let id = Matrix::identity(r.field(), n);
    let zero = Matrix::zeros(r.field(), n, n);
    let family = |m: &Matrix, eigs: &[crate::algebra::Scalar], idem: &[Matrix]| {
        let mut sum = zero.clone();
        let mut weighted = zero.clone();
        for (t, e) in eigs.iter().zip(idem) {
            sum = &sum + e;
            weighted = &weighted + &e.scale(t);
        }
        let products = for_each_index(0..n, |i| {
            for_each_index(0..n, |j| {
                let want = if i == j { &idem[i] } else { &zero };
                Outcome::matrices(&(&idem[i] * &idem[j]), want)
            })
        });
        Outcome::all([products, Outcome::matrices(&sum, &id).at("sum"), Outcome::matrices(&weighted, m).at("spectral")])
    };
    let o = Outcome::all([
        family(r.a(), r.array().theta(), r.e_all()).at("E"),
        family(r.a_star(), r.array().theta_star(), r.e_star_all()).at("E*"),
        Outcome::matrices(&(r.e(0) * r.s()), r.e(0)).at("E_0 S"),
    ]);
    one("realization.idempotents", o)
}

fn trace_roundtrip(c: &Context) -> Vec<NamedOutcome> {
    let r = &c.real;
    let arr = r.array();
    let o = match split_sequences_from_traces(r.a(), r.a_star(), arr.theta(), arr.theta_star()) {
        Ok((v, p)) => Outcome::all([
            Outcome::check(v == arr.varphi_seq(), || "first split sequence".into()),
            Outcome::check(p == arr.phi_seq(), || "second split sequence".into()),
        ]),
        Err(e) => err_outcome(&e),
    };
    one("split.trace_roundtrip", o)
}

fn switching_inverse(c: &Context) -> Vec<NamedOutcome> {
    let r = &c.real;
    let id = Matrix::identity(r.field(), r.d() + 1);
    let o = Outcome::all([
        Outcome::matrices(&(r.s() * r.s_inv()), &id).at("S S^-1"),
        Outcome::matrices(&(r.s_star() * r.s_star_inv()), &id).at("S* S*^-1"),
    ]);
    one("switching.inverse", o)
}

fn switching_polynomial(c: &Context) -> Vec<NamedOutcome> {
    let r = &c.real;
    let d = r.d();
    let o = match (&c.pu, &c.pu_star) {
        (Ok(pu), Ok(pus)) => Outcome::all([
            Outcome::matrices(&poly_apply(&pu.u[d], r.a()), r.s()).at("u_d(A) vs S"),
            Outcome::matrices(&poly_apply(&pus.u[d], r.a_star()), r.s_star()).at("u*_d(A*) vs S*"),
        ]),
        (Err(e), _) | (_, Err(e)) => err_outcome(e),
    };
    one("switching.polynomial", o)
}

/// Solves for `X = sum c_i E_i` with `X E*_0 V ⊆ E*_d V` and compares with
/// the coefficients of `S`; also `S E*_0 V = E*_d V` and `S A = A S`.
fn switching_characterization(c: &Context) -> Vec<NamedOutcome> {
    let r = &c.real;
    let d = r.d();
    let field = r.field();
    let shift = r.a_star().shift(&r.array().theta_star()[d]);
    // Column i is (A* - theta*_d) E_i e_0.
    let cols: Vec<Vec<_>> = (0..=d).map(|i| (&shift * r.e(i)).column(0)).collect();
    let system = Matrix::from_columns(field, d + 1, &cols);
    let coeffs = (0..=d).map(|k| crate::realization::switching_coefficient(r.array(), k));
    let o = match coeffs.collect::<Result<Vec<_>, _>>() {
        Err(e) => err_outcome(&e),
        Ok(cs) => {
            let want = Subspace::spanned_by(field, d + 1, &[cs]);
            let es0v = r.e_star(0).column_space();
            Outcome::all([
                Outcome::subspaces(&system.kernel(), &want).at("solutions vs coefficients of S"),
                Outcome::subspaces(&es0v.image(r.s()), &r.e_star(d).column_space()).at("S E*_0 V"),
                Outcome::matrices(&(r.s() * r.a()), &(r.a() * r.s())).at("S A vs A S"),
            ])
        }
    };
    one("switching.characterization", o)
}

/// For polynomials `f` of degree at most `d`: `f(A) E*_0 = 0` exactly when
/// `f(A) = 0`. The sample mixes random polynomials with `0`.
fn annihilator_sanity(c: &Context) -> Vec<NamedOutcome> {
    let r = &c.real;
    let field = r.field();
    let mut rng = ChaCha8Rng::seed_from_u64(0x4c38);
    let o = for_each_index(0..50, |k| {
        let coeffs = (0..=r.d())
            .map(|_| if k == 0 { field.zero() } else { field.from_i64(rng.gen_range(-5..=5)) })
            .collect();
        let f = poly_apply(&Poly::from_coeffs(field, coeffs), r.a());
        let kills = (&f * r.e_star(0)).is_zero();
        Outcome::check(kills == f.is_zero(), || "f(A) E*_0 = 0 but f(A) != 0".into())
    });
    one("polynomials.annihilator", o)
}

fn polynomial_duality(c: &Context) -> Vec<NamedOutcome> {
    let arr = c.real.array();
    let d = arr.d();
    let (t, ts) = (arr.theta(), arr.theta_star());
    let (duality, values) = match (&c.pu, &c.pu_star) {
        (Ok(pu), Ok(pus)) => (
            for_each_index(0..=d, |i| {
                for_each_index(0..=d, |j| {
                    let (x, y) = (pu.u[i].eval(&t[j]), pus.u[j].eval(&ts[i]));
                    Outcome::check(x == y, || format!("j={j}: {x} vs {y}"))
                })
            }),
            for_each_index(0..=d, |i| {
                let got = pus.u[d].eval(&ts[i]);
                let want = arr.phi_prod(1, i).checked_div(&arr.varphi_prod(1, i)).expect("PA1");
                Outcome::check(got == want, || format!("{got} vs {want}"))
            }),
        ),
        (Err(e), _) | (_, Err(e)) => (err_outcome(e), err_outcome(e)),
    };
    vec![("polynomials.duality".into(), duality), ("polynomials.dual_values".into(), values)]
}

fn mu(c: &Context) -> Vec<NamedOutcome> {
    mu_identities(&c.real)
}

fn s_es0(c: &Context) -> Vec<NamedOutcome> {
    s_es0_identities(&c.real).into_iter().map(|(k, o)| (format!("s_es0.{k}"), o)).collect()
}

fn s_tau(c: &Context) -> Vec<NamedOutcome> {
    s_times_tau_relations(&c.real, &c.routes[0])
        .into_iter()
        .map(|(k, o)| (format!("relations.{k}"), o))
        .collect()
}

fn triangular(c: &Context) -> Vec<NamedOutcome> {
    let r = &c.real;
    let arr = r.array();
    let br = &c.routes[0];
    let pair = |res: Result<(Matrix, Matrix), Error>, spectral: (&Matrix, &Matrix), lower: bool| match res {
        Err(e) => (err_outcome(&e), err_outcome(&e)),
        Ok((m, mi)) => {
            let shape = |x: &Matrix| if lower { x.is_lower_triangular() } else { x.is_upper_triangular() };
            let judge = |x: &Matrix, y: &Matrix| {
                Outcome::all([Outcome::check(shape(x), || "not triangular".into()), Outcome::matrices(x, y)])
            };
            (judge(&m, spectral.0), judge(&mi, spectral.1))
        }
    };
    let (s, si) = pair(s_matrix_closed_form(arr, br), (r.s(), r.s_inv()), true);
    let (ss, ssi) = pair(s_star_matrix_closed_form(arr, br), (r.s_star(), r.s_star_inv()), false);
    vec![
        ("triangular.s".into(), s),
        ("triangular.s_inv".into(), si),
        ("triangular.s_star".into(), ss),
        ("triangular.s_star_inv".into(), ssi),
    ]
}

fn bracket_checks(c: &Context) -> Vec<NamedOutcome> {
    let d = c.real.d();
    let main = &c.routes[0];
    let routes = Outcome::all(c.routes[1..].iter().enumerate().map(|(k, t)| {
        Outcome::check(main.first_difference(t).is_none(), || {
            format!("route {} differs at {:?}", k + 2, main.first_difference(t).unwrap())
        })
    }));
    let symmetry = Outcome::check(main.symmetry_violation().is_none(), || {
        format!("not symmetric at {:?}", main.symmetry_violation().unwrap())
    });
    let corners = {
        let one = c.real.field().one();
        let ok = [main.get(d, 0, 0), main.get(0, d, 0), main.get(0, 0, d)].iter().all(|v| **v == one);
        Outcome::check(ok, || "a corner entry differs from 1".into())
    };
    let closed = |invert: bool| match q_parameter(c.real.array()) {
        Ok(QParameter::Value(q)) => {
            let q = if invert { q.inv() } else { Ok(q) };
            match q.and_then(|q| brackets_closed_form_check(main, &q)) {
                Ok(o) => o,
                Err(Error::NotApplicable(why)) => Outcome::Skipped(why),
                Err(e) => err_outcome(&e),
            }
        }
        Ok(QParameter::Undetermined) => Outcome::Skipped("q is undetermined for d <= 2".into()),
        Ok(QParameter::NotInField) => Outcome::Skipped("q is not in the base field".into()),
        Err(e) => err_outcome(&e),
    };
    vec![
        ("brackets.routes".into(), routes),
        ("brackets.symmetry".into(), symmetry),
        ("brackets.corners".into(), corners),
        ("brackets.closed_form".into(), closed(false)),
        ("brackets.q_inversion".into(), closed(true)),
    ]
}

fn flag_basics(c: &Context) -> Vec<NamedOutcome> {
    vec![
        ("flags.components".into(), flags::flag_components_check(&c.real, &c.geo)),
        ("flags.opposition".into(), flags::opposition_check(&c.geo)),
        ("decompositions.structure".into(), flags::decomposition_structure_check(c.real.system(), &c.geo)),
        ("decompositions.split_components".into(), flags::split_components_check(&c.real, &c.geo)),
    ]
}

fn flag_action(c: &Context) -> Vec<NamedOutcome> {
    vec![
        ("flags.switching_action".into(), flags::flag_action_check(&c.geo, c.real.s())),
        ("flags.perturbation".into(), flags::perturbation_check(&c.real, &c.geo)),
        ("decompositions.switching_action".into(), flags::decomposition_action_check(&c.geo, c.real.s())),
    ]
}

fn flag_uniqueness(c: &Context) -> Vec<NamedOutcome> {
    one("flags.switching_uniqueness", flags::flag_uniqueness_check(&c.geo, c.real.s()))
}

fn decomposition_uniqueness(c: &Context) -> Vec<NamedOutcome> {
    one("decompositions.switching_uniqueness", flags::decomposition_uniqueness_check(&c.geo, c.real.s()))
}

fn relatives_action(c: &Context) -> Vec<NamedOutcome> {
    let o = Outcome::all(D4Element::all().into_iter().map(|g| {
        let (s, _) = c.real.relative_switching(g);
        match Geometry::new(&c.real.relative_system(g)) {
            Err(e) => err_outcome(&e),
            Ok(geo) => Outcome::all([flags::flag_action_check(&geo, &s), flags::decomposition_action_check(&geo, &s)]),
        }
        .at(format!("relative {g}"))
    }));
    one("flags.relatives_action", o)
}

fn commutator_checks(c: &Context) -> Vec<NamedOutcome> {
    let mut out = flags::commutator_checks(&c.real, &c.geo);
    for (k, spectrum) in flags::commutator_spectrum(&c.real, &c.geo).iter().enumerate() {
        out.push((format!("commutator.spectrum.{}", k + 1), flags::spectrum_outcome(spectrum)));
    }
    out
}

fn recognizer_roundtrip(c: &Context) -> Vec<NamedOutcome> {
    let r = &c.real;
    let o = match BidiagonalPair::new(r.a().clone(), r.a_star().clone()).and_then(|p| recognize(&p)) {
        Ok(Verdict::Accept { array, s }) => Outcome::all([
            Outcome::check(&array == r.array(), || "recovered array differs".into()),
            Outcome::matrices(&s, r.s()).at("witness"),
        ]),
        Ok(Verdict::Reject { reason }) => Outcome::Fail(format!("rejected: {reason}")),
        Err(e) => err_outcome(&e),
    };
    one("recognizer.roundtrip", o)
}

const CHECKS: &[Check] = &[
    Check { keys: &["d4.relations"], run: d4_relations },
    Check { keys: &["d4.orbit"], run: d4_orbit },
    Check { keys: &["d4.relative_switching_table"], run: d4_relative_table },
    Check { keys: &["realization.idempotents"], run: idempotent_laws },
    Check { keys: &["split.trace_roundtrip"], run: trace_roundtrip },
    Check { keys: &["switching.inverse"], run: switching_inverse },
    Check { keys: &["switching.polynomial"], run: switching_polynomial },
    Check { keys: &["switching.characterization"], run: switching_characterization },
    Check { keys: &["polynomials.annihilator"], run: annihilator_sanity },
    Check { keys: &["polynomials.duality", "polynomials.dual_values"], run: polynomial_duality },
    Check {
        keys: &[
            "mu.eta_es0_e0",
            "mu.eta_esd_e0",
            "mu.tau_es0_ed",
            "mu.tau_esd_ed",
            "mu.eta_star_e0_es0",
            "mu.eta_star_ed_es0",
            "mu.tau_star_e0_esd",
            "mu.tau_star_ed_esd",
            "mu.e0_esd_ed_es0",
        ],
        run: mu,
    },
    Check {
        keys: &[
            "s_es0.s_es0.a",
            "s_es0.s_es0.b",
            "s_es0.s_inv_esd.a",
            "s_es0.s_inv_esd.b",
            "s_es0.s_star_e0.a",
            "s_es0.s_star_e0.b",
            "s_es0.s_star_inv_ed.a",
            "s_es0.s_star_inv_ed.b",
        ],
        run: s_es0,
    },
    Check {
        keys: &[
            "relations.s_tau",
            "relations.s_inv_tau",
            "relations.s_star_tau_es0",
            "relations.s_star_inv_tau_es0",
            "relations.s_eta_star_ed",
            "relations.s_eta_star_e0",
            "relations.s_star_eta_esd",
            "relations.s_star_eta_es0",
        ],
        run: s_tau,
    },
    Check { keys: &["triangular.s", "triangular.s_inv", "triangular.s_star", "triangular.s_star_inv"], run: triangular },
    Check {
        keys: &["brackets.routes", "brackets.symmetry", "brackets.corners", "brackets.closed_form", "brackets.q_inversion"],
        run: bracket_checks,
    },
    Check {
        keys: &["flags.components", "flags.opposition", "decompositions.structure", "decompositions.split_components"],
        run: flag_basics,
    },
    Check { keys: &["flags.switching_action", "flags.perturbation", "decompositions.switching_action"], run: flag_action },
    Check { keys: &["flags.switching_uniqueness"], run: flag_uniqueness },
    Check { keys: &["decompositions.switching_uniqueness"], run: decomposition_uniqueness },
    Check { keys: &["flags.relatives_action"], run: relatives_action },
    Check {
        keys: &[
            "commutator.fixes_flags",
            "commutator.fixes_decompositions",
            "commutator.product_identity",
            "commutator.spectrum.1",
            "commutator.spectrum.2",
            "commutator.spectrum.3",
            "commutator.spectrum.4",
        ],
        run: commutator_checks,
    },
    Check { keys: &["recognizer.roundtrip"], run: recognizer_roundtrip },
];

/// Every report key, in report order.
pub fn check_keys() -> Vec<&'static str> {
    CHECKS.iter().flat_map(|c| c.keys.iter().copied()).collect()
}

/// A key is selected by its full name or by any dot-separated prefix
/// (`mu` selects all `mu.*` keys).
fn selects(pattern: &str, key: &str) -> bool {
    key == pattern || key.strip_prefix(pattern).is_some_and(|rest| rest.starts_with('.'))
}

/// Which checks to run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Selection {
    #[default]
    All,
    Only(Vec<String>),
}

impl Selection {
    /// Parses `all` or a comma list; unknown names are an error.
    pub fn parse(text: &str) -> Result<Selection, Error> {
        let items: Vec<String> = text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        if items.is_empty() || items.iter().any(|s| s == "all") {
            return Ok(Selection::All);
        }
        let keys = check_keys();
        if let Some(bad) = items.iter().find(|p| !keys.iter().any(|k| selects(p, k))) {
            return Err(Error::Parse(format!("unknown check {bad:?}")));
        }
        Ok(Selection::Only(items))
    }

    fn includes(&self, key: &str) -> bool {
        match self {
            Selection::All => true,
            Selection::Only(ps) => ps.iter().any(|p| selects(p, key)),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    pub execution: Execution,
    pub selection: Selection,
    /// Record elapsed times (off by default so reports are reproducible).
    pub timings: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportEntry {
    pub key: String,
    #[serde(flatten)]
    pub outcome: Outcome,
    /// Milliseconds spent in the check group that produced the entry.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub validity: ValidityReport,
    /// Empty when the array is not valid.
    pub entries: Vec<ReportEntry>,
}

impl TheoremReport {
    /// Valid array and no failing entry.
    pub fn passed(&self) -> bool {
        self.validity.is_valid() && self.entries.iter().all(|e| !e.outcome.failed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| e.outcome.failed())
    }

    pub fn get(&self, key: &str) -> Option<&Outcome> {
        self.entries.iter().find(|e| e.key == key).map(|e| &e.outcome)
    }
}

fn context(arr: &ParameterArray) -> Result<Context, Error> {
    let real = realize(arr)?;
    let routes = bracket_routes(arr)?.into_iter().map(|(_, t)| t).collect();
    let geo = Geometry::new(real.system())?;
    let pu = compute_p_u_polys(&real);
    let pu_star = d4_apply(D4Element::generator(Generator::Star), arr)
        .and_then(|s| realize(&s))
        .and_then(|rs| compute_p_u_polys(&rs));
    Ok(Context { real, routes, geo, pu, pu_star })
}

/// Runs the selected checks. An invalid array yields only its validity
/// report. Errors are limited to failures of the shared set-up, which a
/// valid array never triggers.
pub fn run_suite(arr: &ParameterArray, options: &SuiteOptions) -> Result<TheoremReport, Error> {
    let validity = validate_pa(arr);
    if !validity.is_valid() {
        return Ok(TheoremReport { validity, entries: Vec::new() });
    }
    let ctx = context(arr)?;
    let chosen: Vec<&Check> =
        CHECKS.iter().filter(|c| c.keys.iter().any(|k| options.selection.includes(k))).collect();
    let results = options.execution.map(&chosen, |check| {
        let start = Instant::now();
        let out = (check.run)(&ctx);
        (out, start.elapsed().as_secs_f64() * 1e3)
    });
    let mut entries = Vec::new();
    for ((outs, ms), check) in results.into_iter().zip(&chosen) {
        let produced: Vec<&str> = outs.iter().map(|(k, _)| k.as_str()).collect();
        if produced != check.keys {
            return Err(Error::Internal(format!("check produced keys {produced:?}, declared {:?}", check.keys)));
        }
        for (key, outcome) in outs {
            if options.selection.includes(&key) {
                entries.push(ReportEntry { key, outcome, elapsed_ms: options.timings.then_some(ms) });
            }
        }
    }
    Ok(TheoremReport { validity, entries })
}
