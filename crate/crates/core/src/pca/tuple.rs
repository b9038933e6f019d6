//! Numeric coding of finite sequences of naturals.
//!
//! The encoding is fixed and bit-exact, since persisted codes must be
//! readable by any consumer: `pair(x, y) = (x+y)(x+y+1)/2 + y`,
//! `enc(<>) = 0`, and for a sequence of length n >= 1
//! `enc(s) = 1 + pair(n-1, payload(s))` with `payload(<a>) = a` and
//! `payload(<a> ++ s') = pair(a, payload(s'))`. Every natural decodes to
//! exactly one sequence.

use num_traits::{One, Zero};

pub type Nat = num_bigint::BigUint;

/// Convenience constructor.
pub fn nat(n: u64) -> Nat {
    Nat::from(n)
}

/// Cantor pairing.
pub fn pair(x: &Nat, y: &Nat) -> Nat {
    let s = x + y;
    (&s * (&s + 1u32)) / 2u32 + y
}

/// Inverse of [`pair`]; total on naturals.
pub fn unpair(z: &Nat) -> (Nat, Nat) {
    // w = floor((sqrt(8z+1) - 1) / 2) is the diagonal index.
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let y = z - t;
    let x = &w - &y;
    (x, y)
}

pub fn encode_tuple(s: &[Nat]) -> Nat {
    if s.is_empty() {
        return Nat::zero();
    }
    let mut payload = s[s.len() - 1].clone();
    for a in s[..s.len() - 1].iter().rev() {
        payload = pair(a, &payload);
    }
    pair(&nat(s.len() as u64 - 1), &payload) + 1u32
}

pub fn decode_tuple(n: &Nat) -> Vec<Nat> {
    if n.is_zero() {
        return Vec::new();
    }
    let (len_minus_1, mut payload) = unpair(&(n - 1u32));
    let len: u64 = (&len_minus_1)
        .try_into()
        .expect("tuple length does not fit in u64");
    let mut out = Vec::with_capacity(len as usize + 1);
    for _ in 0..len {
        let (a, rest) = unpair(&payload);
        out.push(a);
        payload = rest;
    }
    out.push(payload);
    out
}

/// Length of the sequence coded by `n`.
pub fn arity(n: &Nat) -> Nat {
    if n.is_zero() {
        return Nat::zero();
    }
    let (len_minus_1, _) = unpair(&(n - 1u32));
    len_minus_1 + 1u32
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjOutOfRange {
    pub code: Nat,
    pub index: Nat,
    pub arity: Nat,
}

/// `i`-th component of the sequence coded by `n`; errors when `i >= arity(n)`.
pub fn proj(n: &Nat, i: &Nat) -> Result<Nat, ProjOutOfRange> {
    let ar = arity(n);
    if i >= &ar {
        return Err(ProjOutOfRange {
            code: n.clone(),
            index: i.clone(),
            arity: ar,
        });
    }
    let (_, mut payload) = unpair(&(n - 1u32));
    let last = &ar - 1u32;
    let mut k = Nat::zero();
    while &k < &last {
        let (a, rest) = unpair(&payload);
        if &k == i {
            return Ok(a);
        }
        payload = rest;
        k += Nat::one();
    }
    Ok(payload)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(xs: &[u64]) -> Vec<Nat> {
        xs.iter().map(|&x| nat(x)).collect()
    }

    #[test]
    fn hand_computed_codes() {
        // enc(<>) = 0, enc(<0>) = 1, enc(<0,0>) = 2.
        assert_eq!(encode_tuple(&[]), nat(0));
        assert_eq!(encode_tuple(&seq(&[0])), nat(1));
        assert_eq!(encode_tuple(&seq(&[0, 0])), nat(2));
    }

    #[test]
    fn proj_and_arity() {
        let p = encode_tuple(&seq(&[4, 2]));
        assert_eq!(arity(&p), nat(2));
        assert_eq!(proj(&p, &nat(0)).unwrap(), nat(4));
        assert_eq!(proj(&p, &nat(1)).unwrap(), nat(2));
        assert!(proj(&p, &nat(2)).is_err());
    }

    #[test]
    fn decode_is_total_and_injective_on_initial_segment() {
        let mut seen = std::collections::HashSet::new();
        for n in 0u64..5000 {
            let s = decode_tuple(&nat(n));
            assert_eq!(encode_tuple(&s), nat(n));
            assert!(seen.insert(s), "two naturals decoded to the same sequence");
        }
    }

    #[test]
    fn round_trip_short_sequences() {
        for a in 0u64..20 {
            for b in 0u64..20 {
                for c in 0u64..20 {
                    let s = seq(&[a, b, c]);
                    assert_eq!(decode_tuple(&encode_tuple(&s)), s);
                }
            }
        }
    }

    #[test]
    fn unpair_inverts_pair() {
        for x in 0u64..60 {
            for y in 0u64..60 {
                let z = pair(&nat(x), &nat(y));
                assert_eq!(unpair(&z), (nat(x), nat(y)));
            }
        }
    }
}
