//! Random valid parameter arrays.
//!
//! Eigenvalue sequences are drawn as `a + b*i` or `a + b*q^i`; the second
//! sequence uses the same shape (with `q` or `1/q`), so the ratio condition
//! has a chance to hold. Everything is then passed through `solve_splits`
//! with a random nonzero seed and only valid results are kept.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Field, Scalar};
use crate::parameter_array::{solve_splits, ParameterArray, Solution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Affine,
    Geometric,
}

#[derive(Clone, Debug)]
pub struct FuzzCase {
    pub array: ParameterArray,
    pub shape: Shape,
}

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub seed: u64,
    pub fields: Vec<Field>,
    pub d_min: usize,
    pub d_max: usize,
    pub shapes: Vec<Shape>,
}

impl FuzzConfig {
    pub fn new(seed: u64, fields: Vec<Field>, d_min: usize, d_max: usize) -> FuzzConfig {
        FuzzConfig { seed, fields, d_min, d_max, shapes: vec![Shape::Affine, Shape::Geometric] }
    }
}

const Q_CHOICES: [(i64, i64); 8] = [(2, 1), (3, 1), (-2, 1), (1, 2), (2, 3), (3, 2), (-3, 1), (-1, 2)];

fn small_nonzero(rng: &mut impl Rng, field: Field) -> Scalar {
    loop {
        let n = rng.gen_range(-6i64..=6);
        let den = rng.gen_range(1i64..=3);
        if n != 0 {
            if let Ok(x) = field.ratio(n, den) {
                if !x.is_zero() {
                    return x;
                }
            }
        }
    }
}

fn sequence(d: usize, a: &Scalar, b: &Scalar, step: &dyn Fn(usize) -> Scalar) -> Vec<Scalar> {
    (0..=d).map(|i| a + &(b * &step(i))).collect()
}

/// One attempt; `None` when the draw is degenerate or the solved array is
/// not valid.
fn attempt(rng: &mut ChaCha8Rng, field: Field, d: usize, shape: Shape) -> Option<ParameterArray> {
    let (a, b) = (small_nonzero(rng, field), small_nonzero(rng, field));
    let (a2, b2) = (small_nonzero(rng, field), small_nonzero(rng, field));
    let (theta, theta_star) = match shape {
        Shape::Affine => {
            let step = |i: usize| field.from_i64(i as i64);
            (sequence(d, &a, &b, &step), sequence(d, &a2, &b2, &step))
        }
        Shape::Geometric => {
            let &(n, m) = Q_CHOICES.choose(rng)?;
            let q = field.ratio(n, m).ok()?;
            let qs = if rng.gen_bool(0.5) { q.clone() } else { q.inv().ok()? };
            let p1 = |i: usize| q.pow(i as u32);
            let p2 = |i: usize| qs.pow(i as u32);
            (sequence(d, &a, &b, &p1), sequence(d, &a2, &b2, &p2))
        }
    };
    let seed = small_nonzero(rng, field);
    match solve_splits(&theta, &theta_star, &seed) {
        Ok(Solution::Valid(arr)) => Some(arr),
        _ => None,
    }
}

/// `count` valid arrays, cycling through fields, shapes and `d` so that
/// every combination is represented. Deterministic in the seed.
pub fn fuzz_arrays(config: &FuzzConfig, count: usize) -> Vec<FuzzCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let ds: Vec<usize> = (config.d_min..=config.d_max).collect();
    let mut out = Vec::with_capacity(count);
    let mut slot = 0usize;
    let mut misses = 0usize;
    while out.len() < count {
        let field = config.fields[slot % config.fields.len()];
        let shape = config.shapes[(slot / config.fields.len()) % config.shapes.len()];
        let d = ds[(slot / (config.fields.len() * config.shapes.len())) % ds.len()];
        match attempt(&mut rng, field, d, shape) {
            Some(array) => {
                out.push(FuzzCase { array, shape });
                slot += 1;
                misses = 0;
            }
            None => {
                misses += 1;
                assert!(misses < 10_000, "no valid array found for {field}, d = {d}, {shape:?}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parameter_array::validate_pa;

    #[test]
    fn generated_arrays_are_valid_and_cover_the_grid() {
        let cfg = FuzzConfig::new(7, vec![Field::Rational, Field::prime(10007).unwrap()], 1, 8);
        let cases = fuzz_arrays(&cfg, 64);
        assert_eq!(cases.len(), 64);
        for c in &cases {
            assert!(validate_pa(&c.array).is_valid());
        }
        for d in 1..=8 {
            assert!(cases.iter().any(|c| c.array.d() == d));
        }
        assert!(cases.iter().any(|c| c.shape == Shape::Geometric && c.array.field() == Field::Rational));
        let again = fuzz_arrays(&cfg, 64);
        assert!(cases.iter().zip(&again).all(|(x, y)| x.array == y.array));
    }
}
