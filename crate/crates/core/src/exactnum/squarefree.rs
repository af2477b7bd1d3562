use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::trial_division_bound;
use crate::error::{Error, Result};

/// Writes `n = s^2 * d` with `d` squarefree.
///
/// Trial division runs up to the configured bound. Whatever cofactor is left
/// has only prime factors above the bound; it is accepted when it is a perfect
/// square or small enough (below bound^3) that it cannot hide a repeated prime
/// without being a square itself.
pub fn split_square(n: &BigUint) -> Result<(BigUint, BigUint)> {
    if n.is_zero() {
        return Ok((BigUint::zero(), BigUint::one()));
    }
    if let Some(small) = n.to_u64() {
        return split_square_u64(small).map(|(s, d)| (BigUint::from(s), BigUint::from(d)));
    }
    let bound = trial_division_bound();
    let mut rest = n.clone();
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut p: u64 = 2;
    while p <= bound {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            // rest is 1 or a prime
            return Ok((square, free * rest));
        }
        let mut exp = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            exp += 1;
        }
        if exp > 0 {
            square *= pb.pow(exp / 2);
            if exp % 2 == 1 {
                free *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    finish_cofactor(n, rest, square, free, bound)
}

fn finish_cofactor(
    n: &BigUint,
    rest: BigUint,
    mut square: BigUint,
    mut free: BigUint,
    bound: u64,
) -> Result<(BigUint, BigUint)> {
    if rest.is_one() {
        return Ok((square, free));
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        square *= r;
        return Ok((square, free));
    }
    // Every prime factor of rest exceeds the bound, so below (bound+1)^3 rest is
    // p, p*q or p^2, and p^2 was excluded above.
    if rest < BigUint::from(bound + 1).pow(3u32) {
        free *= rest;
        return Ok((square, free));
    }
    Err(Error::RadicandUnfactored(n.to_string()))
}

fn split_square_u64(n: u64) -> Result<(u64, u64)> {
    let bound = trial_division_bound();
    let mut rest = n;
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p <= bound {
        if p.saturating_mul(p) > rest {
            return Ok((square, free * rest));
        }
        if rest.is_multiple_of(p) {
            let mut exp = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                exp += 1;
            }
            square *= p.pow(exp / 2);
            if exp % 2 == 1 {
                free *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest == 1 {
        return Ok((square, free));
    }
    let (s, d) = finish_cofactor(
        &BigUint::from(n),
        BigUint::from(rest),
        BigUint::from(square),
        BigUint::from(free),
        bound,
    )?;
    Ok((s.to_u64().unwrap(), d.to_u64().unwrap()))
}

pub fn is_squarefree(n: &BigUint) -> bool {
    matches!(split_square(n), Ok((s, _)) if s.is_one())
}
