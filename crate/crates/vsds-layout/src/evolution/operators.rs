//! Variation operators.
//!
//! Real genes use simulated binary crossover (Deb & Agrawal, 1995) in its
//! unbounded symmetric form (children are clipped to the bounds afterwards,
//! so the pre-clip child mean equals the parent mean exactly) and polynomial
//! mutation in the bounded form (Deb, 2001). Activation records use
//! encoding-specific operators: block-boundary crossover and option
//! reassignment for tag vectors, relax/round/clip SBX and polynomial
//! mutation for dimensional variables.

use rand::seq::index;
use rand::Rng;

use crate::catalog::ConfigurationSpace;
use crate::evolution::chromosome::{bits_to_index, index_to_bits, Activation};
use crate::Scalar;

/// Parents closer than this are not crossed (SBX would divide by zero).
const SBX_EPS: f64 = 1e-14;

/// Simulated binary crossover on two gene vectors, in place.
///
/// Each gene participates with probability 0.5; a participating gene draws a
/// spread factor from the SBX distribution with index `eta`. Children are
/// clipped to `[lower, upper]` after crossover.
pub fn sbx_crossover<F: Scalar, R: Rng>(
    a: &mut [F],
    b: &mut [F],
    lower: &[F],
    upper: &[F],
    eta: F,
    rng: &mut R,
) {
    debug_assert_eq!(a.len(), b.len());
    let half = F::of(0.5);
    for i in 0..a.len() {
        if rng.gen::<f64>() > 0.5 {
            continue;
        }
        let (p1, p2) = (a[i], b[i]);
        if (p1 - p2).abs().as_f64() <= SBX_EPS {
            continue;
        }
        let beta_q = sbx_spread(F::of(rng.gen::<f64>()), eta);
        let c1 = half * ((F::one() + beta_q) * p1 + (F::one() - beta_q) * p2);
        let c2 = half * ((F::one() - beta_q) * p1 + (F::one() + beta_q) * p2);
        a[i] = c1.min(upper[i]).max(lower[i]);
        b[i] = c2.min(upper[i]).max(lower[i]);
    }
}

/// SBX spread factor for a uniform draw `u` in [0, 1).
fn sbx_spread<F: Scalar>(u: F, eta: F) -> F {
    let exponent = (eta + F::one()).recip();
    let two = F::of(2.0);
    if u <= F::of(0.5) {
        (two * u).powf(exponent)
    } else {
        (two * (F::one() - u)).recip().powf(exponent)
    }
}

/// Polynomial mutation on a gene vector, in place.
///
/// Each gene mutates with probability `prob`; the perturbation follows the
/// bounded polynomial distribution with index `eta`, so a gene sitting on a
/// bound can only move inward.
pub fn polynomial_mutation<F: Scalar, R: Rng>(
    genes: &mut [F],
    lower: &[F],
    upper: &[F],
    eta: F,
    prob: F,
    rng: &mut R,
) {
    for i in 0..genes.len() {
        if F::of(rng.gen::<f64>()) >= prob {
            continue;
        }
        let (lo, hi) = (lower[i], upper[i]);
        if hi <= lo {
            continue;
        }
        genes[i] = polynomial_perturb(genes[i], lo, hi, eta, F::of(rng.gen::<f64>()));
    }
}

/// One bounded polynomial-mutation step for a value in `[lo, hi]`.
fn polynomial_perturb<F: Scalar>(y: F, lo: F, hi: F, eta: F, u: F) -> F {
    let one = F::one();
    let two = F::of(2.0);
    let half = F::of(0.5);
    let range = hi - lo;
    let exponent = (eta + one).recip();
    let delta_q = if u <= half {
        let d1 = (y - lo) / range;
        let val = two * u + (one - two * u) * (one - d1).powf(eta + one);
        val.powf(exponent) - one
    } else {
        let d2 = (hi - y) / range;
        let val = two * (one - u) + two * (u - half) * (one - d2).powf(eta + one);
        one - val.powf(exponent)
    };
    (y + delta_q * range).min(hi).max(lo)
}

/// n-point crossover on tag vectors, restricted to component block
/// boundaries so one-hot blocks are never split. Defaults to 1 point.
pub fn tag_crossover<R: Rng>(
    a: &mut [bool],
    b: &mut [bool],
    space: &ConfigurationSpace,
    points: usize,
    rng: &mut R,
) {
    let counts = space.option_counts();
    let internal_boundaries = counts.len().saturating_sub(1);
    if internal_boundaries == 0 || points == 0 {
        return;
    }
    // Flag offsets of the internal component boundaries.
    let mut offsets = Vec::with_capacity(internal_boundaries);
    let mut acc = 0;
    for &n in &counts[..internal_boundaries] {
        acc += n;
        offsets.push(acc);
    }
    let take = points.min(internal_boundaries);
    let mut cuts: Vec<usize> = index::sample(rng, internal_boundaries, take)
        .into_iter()
        .map(|i| offsets[i])
        .collect();
    cuts.sort_unstable();
    let mut swapping = false;
    let mut next_cut = 0;
    for i in 0..a.len() {
        while next_cut < cuts.len() && cuts[next_cut] == i {
            swapping = !swapping;
            next_cut += 1;
        }
        if swapping {
            std::mem::swap(&mut a[i], &mut b[i]);
        }
    }
}

/// Tag mutation: with probability `prob` per component, reassign its one-hot
/// block to a different admissible option, chosen uniformly.
pub fn tag_mutation<F: Scalar, R: Rng>(
    flags: &mut [bool],
    space: &ConfigurationSpace,
    prob: F,
    rng: &mut R,
) {
    let mut offset = 0;
    for &n in space.option_counts() {
        if n >= 2 && F::of(rng.gen::<f64>()) < prob {
            let block = &mut flags[offset..offset + n];
            let current = block
                .iter()
                .position(|&f| f)
                .expect("tag block must have a set flag");
            let mut alt = rng.gen_range(0..n - 1);
            if alt >= current {
                alt += 1;
            }
            block[current] = false;
            block[alt] = true;
        }
        offset += n;
    }
}

/// One-variable SBX in relaxed (real) space.
fn sbx_real<R: Rng>(p1: f64, p2: f64, lo: f64, hi: f64, eta: f64, rng: &mut R) -> (f64, f64) {
    if (p1 - p2).abs() <= SBX_EPS {
        return (p1, p2);
    }
    let beta_q = sbx_spread(rng.gen::<f64>(), eta);
    let c1 = 0.5 * ((1.0 + beta_q) * p1 + (1.0 - beta_q) * p2);
    let c2 = 0.5 * ((1.0 - beta_q) * p1 + (1.0 + beta_q) * p2);
    (c1.clamp(lo, hi), c2.clamp(lo, hi))
}

/// Rounds a relaxed dimensional variable back onto the integer lattice.
fn round_clamp(value: f64, max_inclusive: u64) -> u64 {
    let rounded = value.round();
    if rounded <= 0.0 {
        0
    } else if rounded as u64 >= max_inclusive {
        max_inclusive
    } else {
        rounded as u64
    }
}

/// If the decoded index overflows the configuration space (possible for
/// binary encodings whose width is not a power of two), clip to the last
/// valid configuration.
fn clamp_binary(bits: &mut [bool], space: &ConfigurationSpace) {
    let card = space.cardinality();
    if bits_to_index(bits) >= card {
        let clipped = index_to_bits(card - 1, bits.len());
        bits.copy_from_slice(&clipped);
    }
}

/// Crossover on dimensional-variable activations: relax each variable to a
/// real, apply SBX, round to the nearest integer and clip into range.
///
/// Both activations must use the same encoding. Each variable participates
/// with probability 0.5, mirroring the gene-level convention.
pub fn dv_crossover<R: Rng>(
    a: &mut Activation,
    b: &mut Activation,
    space: &ConfigurationSpace,
    eta: f64,
    rng: &mut R,
) {
    match (a, b) {
        (Activation::IntegerDv(va), Activation::IntegerDv(vb)) => {
            for (i, &n) in space.option_counts().iter().enumerate() {
                if n < 2 || rng.gen::<f64>() > 0.5 {
                    continue;
                }
                let hi = (n - 1) as f64;
                let (c1, c2) = sbx_real(va[i] as f64, vb[i] as f64, 0.0, hi, eta, rng);
                va[i] = round_clamp(c1, (n - 1) as u64) as usize;
                vb[i] = round_clamp(c2, (n - 1) as u64) as usize;
            }
        }
        (Activation::NumericIndexDv(ia), Activation::NumericIndexDv(ib)) => {
            let card = space.cardinality();
            if card < 2 || rng.gen::<f64>() > 0.5 {
                return;
            }
            let hi = (card - 1) as f64;
            let (c1, c2) = sbx_real(*ia as f64, *ib as f64, 0.0, hi, eta, rng);
            *ia = round_clamp(c1, card - 1);
            *ib = round_clamp(c2, card - 1);
        }
        (Activation::BinaryDv(ba), Activation::BinaryDv(bb)) => {
            for i in 0..ba.len() {
                if rng.gen::<f64>() > 0.5 {
                    continue;
                }
                let (c1, c2) = sbx_real(
                    f64::from(ba[i]),
                    f64::from(bb[i]),
                    0.0,
                    1.0,
                    eta,
                    rng,
                );
                ba[i] = c1.round() >= 1.0;
                bb[i] = c2.round() >= 1.0;
            }
            clamp_binary(ba, space);
            clamp_binary(bb, space);
        }
        _ => panic!("dv_crossover requires two dimensional-variable activations of the same kind"),
    }
}

/// Mutation on dimensional-variable activations: relax, apply polynomial
/// mutation with probability `prob` per variable, round and clip.
pub fn dv_mutation<R: Rng>(
    act: &mut Activation,
    space: &ConfigurationSpace,
    eta: f64,
    prob: f64,
    rng: &mut R,
) {
    match act {
        Activation::IntegerDv(values) => {
            for (i, &n) in space.option_counts().iter().enumerate() {
                if n < 2 || rng.gen::<f64>() >= prob {
                    continue;
                }
                let hi = (n - 1) as f64;
                let y = polynomial_perturb(values[i] as f64, 0.0, hi, eta, rng.gen::<f64>());
                values[i] = round_clamp(y, (n - 1) as u64) as usize;
            }
        }
        Activation::NumericIndexDv(index) => {
            let card = space.cardinality();
            if card < 2 || rng.gen::<f64>() >= prob {
                return;
            }
            let hi = (card - 1) as f64;
            let y = polynomial_perturb(*index as f64, 0.0, hi, eta, rng.gen::<f64>());
            *index = round_clamp(y, card - 1);
        }
        Activation::BinaryDv(bits) => {
            for bit in bits.iter_mut() {
                if rng.gen::<f64>() >= prob {
                    continue;
                }
                let y = polynomial_perturb(f64::from(*bit), 0.0, 1.0, eta, rng.gen::<f64>());
                *bit = y.round() >= 1.0;
            }
            clamp_binary(bits, space);
        }
        Activation::Tags(_) => panic!("dv_mutation does not apply to tag vectors"),
    }
}
