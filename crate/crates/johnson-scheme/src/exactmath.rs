//! Arbitrary-precision integer and rational arithmetic plus the
//! combinatorial number functions every other module consumes.
//!
//! `ExactInt` and `ExactRational` are arbitrary-precision; all operations
//! are exact. Divisibility and perfect-square questions are decided, never
//! approximated; the only admissible non-answer is the explicit
//! [`Squarefree::Unknown`] verdict when a factorization work budget runs out.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;
/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type ExactRational = num_rational::BigRational;

/// `C(n,k)` for arbitrary integer `n` and integer `k`.
///
/// Returns 0 for `k < 0`, and 0 for `k > n >= 0`. For negative `n` the
/// generalized (falling-factorial) binomial coefficient is returned, which
/// the anticode size formulas rely on only through the `k < 0 => 0` case.
pub fn binom(n: &ExactInt, k: &ExactInt) -> ExactInt {
    if k.is_negative() {
        return ExactInt::zero();
    }
    if !n.is_negative() && k > n {
        return ExactInt::zero();
    }
    // Use symmetry to keep the loop short for nonnegative n.
    let k = if !n.is_negative() {
        let nk = n - k;
        if &nk < k {
            nk
        } else {
            k.clone()
        }
    } else {
        k.clone()
    };
    let k = k
        .to_u64()
        .expect("binomial lower index too large to enumerate");
    let mut num = ExactInt::one();
    let mut den = ExactInt::one();
    for i in 0..k {
        num *= n - ExactInt::from(i);
        den *= ExactInt::from(i + 1);
    }
    num / den
}

/// Convenience wrapper for machine-sized arguments.
pub fn binom_i(n: i64, k: i64) -> ExactInt {
    binom(&ExactInt::from(n), &ExactInt::from(k))
}

/// Stirling number of the second kind `S(r,v)`: the number of partitions of
/// an `r`-set into `v` nonempty blocks. Computed by the standard recurrence
/// `S(r,v) = S(r-1,v-1) + v*S(r-1,v)`.
pub fn stirling2(r: usize, v: usize) -> ExactInt {
    if v > r {
        return ExactInt::zero();
    }
    if r == 0 {
        return ExactInt::one(); // S(0,0) = 1
    }
    if v == 0 {
        return ExactInt::zero();
    }
    // row-by-row dynamic programming over v = 0..=r
    let mut row = vec![ExactInt::zero(); r + 1];
    row[0] = ExactInt::one(); // row for r' = 0
    for _rp in 1..=r {
        let mut next = vec![ExactInt::zero(); r + 1];
        for vp in 1..=r {
            next[vp] = &row[vp - 1] + ExactInt::from(vp as u64) * &row[vp];
        }
        row = next;
    }
    row[v].clone()
}

/// Exact integer square root test: `Some(r)` with `r*r == x` when `x` is a
/// perfect square, `None` otherwise (including all negative `x`).
pub fn is_square(x: &ExactInt) -> Option<ExactInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.sqrt();
    if &(&r * &r) == x {
        Some(r)
    } else {
        None
    }
}

/// Outcome of a squarefreeness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Squarefree {
    /// Certainly squarefree.
    Yes,
    /// Certainly not squarefree; carries a witness `p` with `p^2 | x`.
    No { square_divisor: ExactInt },
    /// The factorization work budget ran out before certainty was reached.
    Unknown,
}

impl Squarefree {
    pub fn is_yes(&self) -> bool {
        matches!(self, Squarefree::Yes)
    }
}

/// Bound for the shared trial-division prime table.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Default Pollard-rho iteration budget.
pub const DEFAULT_RHO_BUDGET: u64 = 2_000_000;

fn prime_table() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_BOUND as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        if n >= 1 {
            sieve[1] = false;
        }
        let mut p = 2usize;
        while p * p <= n {
            if sieve[p] {
                let mut q = p * p;
                while q <= n {
                    sieve[q] = false;
                    q += p;
                }
            }
            p += 1;
        }
        (2..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
    })
}

/// Deterministic Miller-Rabin primality test, proven correct for all
/// `n < 3.317e24` with the fixed base set below. Returns `None` above that
/// bound (the result would only be probable).
fn is_prime_certain(n: &BigUint) -> Option<bool> {
    let two = BigUint::from(2u32);
    if n < &two {
        return Some(false);
    }
    const BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    if BASES.iter().any(|&b| *n == BigUint::from(b)) {
        return Some(true);
    }
    if n.is_even() {
        return Some(false);
    }
    // proven bound for bases 2..=41 (Sorenson & Webster)
    let bound = BigUint::parse_bytes(b"3317044064679887385961981", 10).unwrap();
    if n >= &bound {
        return None;
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &b in &BASES {
        let b = BigUint::from(b);
        if &b >= n {
            continue;
        }
        let mut x = b.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return Some(false);
    }
    Some(true)
}

/// Deterministic Pollard rho (Brent variant) with an iteration budget.
/// Returns a nontrivial factor, or `None` if the budget runs out.
fn pollard_rho(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    let one = BigUint::one();
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    // deterministic sequence of polynomial offsets
    for c in 1u32..64 {
        let c = BigUint::from(c);
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = one.clone();
        while d.is_one() {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break; // cycle without factor; try next c
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && &d != n {
            return Some(d);
        }
    }
    None
}

/// Squarefreeness of `x >= 1` with an explicit work budget.
///
/// Strategy: trial division by all primes up to [`TRIAL_DIVISION_BOUND`],
/// then perfect-square / primality / semiprime-window reasoning on the
/// remaining cofactor, then budgeted Pollard rho. Every `Yes`/`No` answer is
/// certain; budget exhaustion yields `Unknown`, never a guess.
pub fn is_squarefree_with_budget(x: &ExactInt, budget: u64) -> Squarefree {
    assert!(x.is_positive(), "is_squarefree requires x >= 1");
    let mut m = x.to_biguint().unwrap();
    for &p in prime_table() {
        let p_big = BigUint::from(p);
        if &(&p_big * &p_big) > &m {
            break;
        }
        if (&m % &p_big).is_zero() {
            m /= &p_big;
            if (&m % &p_big).is_zero() {
                return Squarefree::No {
                    square_divisor: ExactInt::from(p),
                };
            }
        }
    }
    let mut budget = budget;
    squarefree_cofactor(&m, &mut budget)
}

/// Squarefreeness with the default budget.
pub fn is_squarefree(x: &ExactInt) -> Squarefree {
    is_squarefree_with_budget(x, DEFAULT_RHO_BUDGET)
}

/// `m` has no prime factor <= TRIAL_DIVISION_BOUND (or is 1).
fn squarefree_cofactor(m: &BigUint, budget: &mut u64) -> Squarefree {
    if m.is_one() {
        return Squarefree::Yes;
    }
    let root = m.sqrt();
    if &(&root * &root) == m {
        return Squarefree::No {
            square_divisor: ExactInt::from(root),
        };
    }
    let b = BigUint::from(TRIAL_DIVISION_BOUND);
    let b2 = &b * &b;
    if m < &b2 {
        return Squarefree::Yes; // must be prime
    }
    let b3 = &b2 * &b;
    if m < &b3 {
        // no factor <= B, not a square, below B^3: a prime or a product of
        // two distinct primes, squarefree either way
        return Squarefree::Yes;
    }
    match is_prime_certain(m) {
        Some(true) => return Squarefree::Yes,
        Some(false) => {}
        None => return Squarefree::Unknown,
    }
    match pollard_rho(m, budget) {
        Some(d) => {
            let q = m / &d;
            if !d.gcd(&q).is_one() {
                let g = d.gcd(&q);
                return Squarefree::No {
                    square_divisor: ExactInt::from(g),
                };
            }
            match squarefree_cofactor(&d, budget) {
                Squarefree::Yes => squarefree_cofactor(&q, budget),
                other => other,
            }
        }
        None => Squarefree::Unknown,
    }
}

/// Full factorization of `x >= 1` as `(prime, exponent)` pairs in increasing
/// prime order, or `None` if the work budget runs out.
pub fn factorize(x: &ExactInt, budget: u64) -> Option<Vec<(ExactInt, u32)>> {
    assert!(x.is_positive(), "factorize requires x >= 1");
    let mut m = x.to_biguint().unwrap();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for &p in prime_table() {
        let p_big = BigUint::from(p);
        if &(&p_big * &p_big) > &m {
            break;
        }
        let mut e = 0u32;
        while (&m % &p_big).is_zero() {
            m /= &p_big;
            e += 1;
        }
        if e > 0 {
            out.push((p_big, e));
        }
    }
    let mut budget = budget;
    if !factor_cofactor(&m, &mut budget, &mut out) {
        return None;
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    // merge equal primes produced by different rho branches
    let mut merged: Vec<(ExactInt, u32)> = Vec::new();
    for (p, e) in out {
        let p = ExactInt::from(p);
        match merged.last_mut() {
            Some(last) if last.0 == p => last.1 += e,
            _ => merged.push((p, e)),
        }
    }
    Some(merged)
}

fn factor_cofactor(m: &BigUint, budget: &mut u64, out: &mut Vec<(BigUint, u32)>) -> bool {
    if m.is_one() {
        return true;
    }
    let b2 = BigUint::from(TRIAL_DIVISION_BOUND) * BigUint::from(TRIAL_DIVISION_BOUND);
    if m < &b2 {
        out.push((m.clone(), 1)); // prime: no factor below B, below B^2
        return true;
    }
    match is_prime_certain(m) {
        Some(true) => {
            out.push((m.clone(), 1));
            return true;
        }
        Some(false) => {}
        None => return false,
    }
    // perfect powers first so rho only faces distinct-factor composites
    for k in 2u32..=6 {
        let r = m.nth_root(k);
        if num_traits::pow::pow(r.clone(), k as usize) == *m {
            let mut sub = Vec::new();
            if !factor_cofactor(&r, budget, &mut sub) {
                return false;
            }
            for (p, e) in sub {
                out.push((p, e * k));
            }
            return true;
        }
    }
    match pollard_rho(m, budget) {
        Some(d) => {
            let q = m / &d;
            factor_cofactor(&d, budget, out) && factor_cofactor(&q, budget, out)
        }
        None => false,
    }
}

/// p-adic valuation of `C(n,k)` by Kummer's theorem: the number of carries
/// when adding `k` and `n-k` in base `p`. Requires `0 <= k <= n`.
pub fn binom_valuation(n: u64, k: u64, p: u64) -> u32 {
    debug_assert!(p >= 2 && k <= n);
    let mut a = k;
    let mut b = n - k;
    let mut carry = 0u64;
    let mut carries = 0u32;
    while a > 0 || b > 0 || carry > 0 {
        let digit = a % p + b % p + carry;
        if digit >= p {
            carries += 1;
            carry = 1;
        } else {
            carry = 0;
        }
        a /= p;
        b /= p;
    }
    carries
}

/// Exposes the shared prime table (primes up to [`TRIAL_DIVISION_BOUND`]).
pub fn small_primes() -> &'static [u64] {
    prime_table()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(x: i64) -> ExactInt {
        ExactInt::from(x)
    }

    #[test]
    fn binom_basics() {
        assert_eq!(binom_i(7, 3), int(35));
        assert_eq!(binom_i(14, 7), int(3432));
        assert_eq!(binom_i(5, -1), int(0));
        assert_eq!(binom_i(3, 5), int(0));
        assert_eq!(binom_i(0, 0), int(1));
        assert_eq!(binom_i(-1, 2), int(1)); // generalized: (-1)(-2)/2
    }

    #[test]
    fn binom_matches_multiplicative_formula() {
        // independent multiplicative evaluation as a cross-check
        let mut v = ExactInt::one();
        for i in 0..7u64 {
            v = v * ExactInt::from(14 - i) / ExactInt::from(i + 1);
        }
        assert_eq!(binom_i(14, 7), v);
    }

    #[test]
    fn binom_symmetry_and_pascal() {
        for n in 0..40i64 {
            for k in 0..=n {
                assert_eq!(binom_i(n, k), binom_i(n, n - k));
                if n > 0 {
                    assert_eq!(binom_i(n, k), binom_i(n - 1, k - 1) + binom_i(n - 1, k));
                }
            }
        }
    }

    #[test]
    fn vandermonde_whole_space() {
        for n in 1..=30i64 {
            for w in 0..=n {
                let total: ExactInt = (0..=w).map(|i| binom_i(w, i) * binom_i(n - w, i)).sum();
                assert_eq!(total, binom_i(n, w));
            }
        }
    }

    #[test]
    fn catalan_integrality() {
        for m in 1..=2000i64 {
            let c = binom_i(2 * m, m);
            assert!((&c % ExactInt::from(m + 1)).is_zero(), "m={m}");
        }
    }

    #[test]
    fn stirling_basics() {
        assert_eq!(stirling2(3, 2), int(3));
        assert_eq!(stirling2(0, 0), int(1));
        for r in 1..=12 {
            assert_eq!(stirling2(r, 1), int(1));
            assert_eq!(stirling2(r, r), int(1));
            assert_eq!(stirling2(r, 0), int(0));
        }
    }

    #[test]
    fn stirling_alternating_sum_formula() {
        // S(r,v) = (1/v!) * sum_{i=0}^{v} (-1)^i C(v,i) (v-i)^r
        for r in 0..=15usize {
            for v in 0..=r {
                let mut sum = ExactInt::zero();
                for i in 0..=v {
                    let term = binom_i(v as i64, i as i64)
                        * num_traits::pow::pow(int((v - i) as i64), r);
                    if i % 2 == 0 {
                        sum += term;
                    } else {
                        sum -= term;
                    }
                }
                let mut fact = ExactInt::one();
                for j in 1..=v {
                    fact *= int(j as i64);
                }
                if v == 0 && r > 0 {
                    assert!(sum.is_zero());
                    assert_eq!(stirling2(r, v), int(0));
                } else {
                    assert_eq!(&sum / &fact, stirling2(r, v), "r={r} v={v}");
                }
            }
        }
    }

    #[test]
    fn square_detection() {
        assert_eq!(is_square(&int(49)), Some(int(7)));
        assert_eq!(is_square(&int(281)), None);
        assert_eq!(is_square(&int(0)), Some(int(0)));
        assert_eq!(is_square(&int(-4)), None);
        // large values round-trip
        let big: ExactInt = ExactInt::from(10u32).pow(30) + 12345;
        let sq = &big * &big;
        assert_eq!(is_square(&sq), Some(big.clone()));
        assert_eq!(is_square(&(&sq + 1)), None);
        assert_eq!(is_square(&(&sq - 1)), None);
    }

    #[test]
    fn squarefree_basics() {
        assert!(is_squarefree(&int(10)).is_yes());
        assert_eq!(
            is_squarefree(&int(50)),
            Squarefree::No {
                square_divisor: int(5)
            }
        );
        assert!(is_squarefree(&int(1)).is_yes());
        // Phi_1(14,7) = 1 + 7*7 = 50, the Gordon trigger
        assert_eq!(
            is_squarefree(&int(1 + 7 * 7)),
            Squarefree::No {
                square_divisor: int(5)
            }
        );
        // semiprime above the trial bound squared is still decided
        let p = ExactInt::from(1_000_003u64);
        let q = ExactInt::from(1_000_033u64);
        assert!(is_squarefree(&(&p * &q)).is_yes());
        assert_eq!(
            is_squarefree(&(&p * &p)),
            Squarefree::No {
                square_divisor: p.clone()
            }
        );
    }

    #[test]
    fn factorization_roundtrip() {
        for x in [2u64, 12, 360, 1_000_000, 999_983, 4_294_967_291] {
            let f = factorize(&ExactInt::from(x), DEFAULT_RHO_BUDGET).unwrap();
            let mut prod = ExactInt::one();
            for (p, e) in &f {
                prod *= num_traits::pow::pow(p.clone(), *e as usize);
            }
            assert_eq!(prod, ExactInt::from(x));
        }
    }

    #[test]
    fn kummer_matches_direct_valuation() {
        for n in 0..=60u64 {
            for k in 0..=n {
                let b = binom_i(n as i64, k as i64);
                for p in [2u64, 3, 5, 7, 11] {
                    let mut v = 0u32;
                    let mut b = b.clone();
                    while (&b % ExactInt::from(p)).is_zero() {
                        b /= ExactInt::from(p);
                        v += 1;
                    }
                    assert_eq!(binom_valuation(n, k, p), v, "n={n} k={k} p={p}");
                }
            }
        }
    }

    #[test]
    fn decimal_string_roundtrip() {
        for s in ["0", "-1", "2894292447518689", "16869172608065961"] {
            let v: ExactInt = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
    }
}
