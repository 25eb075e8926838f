//! Strength polynomials, configuration-distribution recurrences and
//! binomial-moment closed forms for hypothetical 1-, 2- and e-perfect codes.
//!
//! Everything is exact: moment values are rationals end-to-end, and
//! "integrality" verdicts test that the reduced denominator is 1.

use crate::exactmath::{binom, binom_i, is_square, stirling2, ExactInt, ExactRational};
use num_traits::{One, Signed, Zero};

fn int(x: i64) -> ExactInt {
    ExactInt::from(x)
}

fn rat_int(x: ExactInt) -> ExactRational {
    ExactRational::from_integer(x)
}

/// sigma_e(n,w,t) = sum_{i=0}^{e} (-1)^i C(t,i)
///                  sum_{j=0}^{e-i} C(w-i,j) C(n-w-t+i, i+j).
///
/// The strength of an e-perfect code is the smallest positive phi with
/// sigma_e(n,w,phi+1) = 0.
pub fn sigma_e(n: i64, w: i64, t: i64, e: i64) -> ExactInt {
    let mut total = ExactInt::zero();
    for i in 0..=e {
        let mut inner = ExactInt::zero();
        for j in 0..=(e - i) {
            inner += binom(&int(w - i), &int(j)) * binom(&int(n - w - t + i), &int(i + j));
        }
        let term = binom(&int(t), &int(i)) * inner;
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// One sign branch of the e=2, n=2w nested-radical strength formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchStrength {
    /// true: outer radicand -11+8w+4s; false: -11+8w-4s.
    pub outer_plus: bool,
    pub outer_radicand: ExactInt,
    /// phi = (-1+2w -/+ sqrt(outer))/2 when everything is integral.
    pub phi: Option<ExactInt>,
}

/// Which formula produced (or failed to produce) a strength value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrengthPath {
    /// e=1: phi = (n-1-sqrt((n-2w+1)^2+4(w-1)))/2.
    ClosedForm1 {
        discriminant: ExactInt,
        root: Option<ExactInt>,
    },
    /// e=2, n=2w: nested radical, both sign branches evaluated.
    ClosedForm2 {
        inner_radicand: ExactInt,
        inner_root: Option<ExactInt>,
        branches: Vec<BranchStrength>,
    },
    /// General e: scan sigma_e roots for t <= limit.
    SigmaScan { limit: i64 },
}

/// The strength of a hypothetical e-perfect code in J(n,w), or `None` when
/// the defining equation has no admissible integer solution (itself a
/// nonexistence witness).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrengthResult {
    pub phi: Option<i64>,
    pub path: StrengthPath,
}

/// Computes the code strength for the canonical side n >= 2w.
///
/// e=1 uses the closed form; e=2 with n=2w uses the nested-radical form
/// (both sign branches, at least one must be fully integral); every other
/// case scans sigma_e for its smallest positive root.
pub fn strength(n: i64, w: i64, e: i64) -> StrengthResult {
    assert!(n >= 2 * w && w >= 0 && e >= 1, "canonical side requires n >= 2w");
    if e == 1 {
        let d = int(n - 2 * w + 1).pow(2) + int(4) * int(w - 1);
        let root = is_square(&d);
        let phi = root.as_ref().and_then(|r| {
            let num = int(n - 1) - r;
            if num.is_negative() || (&num % int(2)) != ExactInt::zero() {
                None
            } else {
                i64::try_from(num / int(2)).ok().filter(|&p| p >= 1)
            }
        });
        return StrengthResult {
            phi,
            path: StrengthPath::ClosedForm1 {
                discriminant: d,
                root,
            },
        };
    }
    if e == 2 && n == 2 * w {
        let inner = int(5 - 6 * w) + int(2) * int(w).pow(2);
        let inner_root = is_square(&inner);
        let mut branches = Vec::new();
        let mut phi: Option<i64> = None;
        for outer_plus in [false, true] {
            let outer_radicand = match &inner_root {
                Some(s) => {
                    let four_s = int(4) * s;
                    if outer_plus {
                        int(8 * w - 11) + four_s
                    } else {
                        int(8 * w - 11) - four_s
                    }
                }
                None => {
                    branches.push(BranchStrength {
                        outer_plus,
                        outer_radicand: ExactInt::zero(),
                        phi: None,
                    });
                    continue;
                }
            };
            let branch_phi = is_square(&outer_radicand).and_then(|r| {
                // phi = (-1 + 2w - r)/2 for the matching sign pattern
                let num = int(2 * w - 1) - if outer_plus { -r } else { r.clone() };
                if num.is_negative() || (&num % int(2)) != ExactInt::zero() {
                    None
                } else {
                    Some(num / int(2))
                }
            });
            if phi.is_none() {
                if let Some(p) = &branch_phi {
                    phi = i64::try_from(p.clone()).ok().filter(|&p| p >= 1 && p < w);
                }
            }
            branches.push(BranchStrength {
                outer_plus,
                outer_radicand,
                phi: branch_phi,
            });
        }
        return StrengthResult {
            phi,
            path: StrengthPath::ClosedForm2 {
                inner_radicand: inner,
                inner_root,
                branches,
            },
        };
    }
    // general fallback: smallest positive phi with sigma_e(n,w,phi+1) = 0
    // (the strength of a nontrivial perfect code is below w)
    let limit = (w - 1).max(0);
    let phi = (1..=limit).find(|&p| sigma_e(n, w, p + 1, e).is_zero());
    StrengthResult {
        phi,
        path: StrengthPath::SigmaScan { limit },
    }
}

/// Which middle coefficient the three-term recurrence uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MidCoefficient {
    /// 1 + i(k-i) + (w-i)(w+a-k+i): satisfies the k=w specialization and
    /// the brute-force oracle.
    Corrected,
    /// 1 + i(k-1) + (w-i)(w+a-k+i): as printed; kept only for the
    /// regression test demonstrating it fails.
    AsPrinted,
}

/// Coefficients and right-hand side of the three-term recurrence at index i
/// for a 1-perfect code in J(2w+a, w) with a coordinate block of size k:
///
/// c_plus X_{i+1} + c_mid X_i + c_minus X_{i-1} = C(k,i) C(2w+a-k, w-i).
pub fn recurrence_row(
    w: i64,
    a: i64,
    k: i64,
    i: i64,
    mid: MidCoefficient,
) -> (ExactInt, ExactInt, ExactInt, ExactInt) {
    let c_plus = int((i + 1) * (w + a - k + i + 1));
    let c_mid = match mid {
        MidCoefficient::Corrected => int(1 + i * (k - i) + (w - i) * (w + a - k + i)),
        MidCoefficient::AsPrinted => int(1 + i * (k - 1) + (w - i) * (w + a - k + i)),
    };
    let c_minus = int((k - i + 1) * (w - i + 1));
    let rhs = binom(&int(k), &int(i)) * binom(&int(2 * w + a - k), &int(w - i));
    (c_plus, c_mid, c_minus, rhs)
}

/// Checks the recurrence equation at index i against known configuration
/// counts `values[j]` = X_j (out-of-range indices read as 0).
pub fn recurrence_holds_at(
    values: &[ExactRational],
    w: i64,
    a: i64,
    k: i64,
    i: i64,
    mid: MidCoefficient,
) -> bool {
    let get = |j: i64| -> ExactRational {
        if j < 0 || j as usize >= values.len() {
            ExactRational::zero()
        } else {
            values[j as usize].clone()
        }
    };
    let (cp, cm, cn, rhs) = recurrence_row(w, a, k, i, mid);
    rat_int(cp) * get(i + 1) + rat_int(cm) * get(i) + rat_int(cn) * get(i - 1) == rat_int(rhs)
}

/// Solves the recurrence downward from a known boundary.
///
/// Given X_top = `v_top` and X_{top-1} = `v_next`, returns the values
/// [X_top, X_{top-1}, ..., X_{top-steps}] using the equation at index
/// i = top-1, top-2, ... to express each X_{i-1}.
pub fn config_recurrence_solve(
    w: i64,
    a: i64,
    k: i64,
    top: i64,
    v_top: ExactRational,
    v_next: ExactRational,
    steps: usize,
) -> Vec<ExactRational> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(v_top);
    if steps == 0 {
        return out;
    }
    out.push(v_next);
    for step in 1..steps {
        let i = top - step as i64;
        let (cp, cm, cn, rhs) = recurrence_row(w, a, k, i, MidCoefficient::Corrected);
        assert!(!cn.is_zero(), "singular recurrence step at i={i}");
        let hi = &out[step - 1];
        let lo = &out[step];
        let next = (rat_int(rhs) - rat_int(cp) * hi - rat_int(cm) * lo) / rat_int(cn);
        out.push(next);
    }
    out
}

/// Closed form for the difference-distribution moment of a 1-perfect code:
/// sum_i C(i,k) Delta_i = (-1)^{w-k} prod_{l=1}^{w-k}
///   [(l-1)n + l^2 - l + 1 - w(2l-1)] / l^2, for strength < k <= w.
pub fn delta_moment_1perfect(n: i64, w: i64, k: i64) -> ExactRational {
    assert!(k <= w);
    let mut v = ExactRational::one();
    for l in 1..=(w - k) {
        v *= ExactRational::new(int((l - 1) * n + l * l - l + 1 - w * (2 * l - 1)), int(l * l));
    }
    if (w - k) % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Closed form for sum_i C(i,k) B_i of a 1-perfect code.
///
/// Unlike the difference moment, this form additionally uses the
/// ball-partition identity A_i + w(n-w) B_i = C(w,i) C(n-w,i), so it
/// describes an actual perfect code rather than the bare recurrence
/// solution; for inconsistent parameter sets the two can differ.
pub fn b_moment_1perfect(n: i64, w: i64, k: i64) -> ExactRational {
    let phi1 = rat_int(int(1 + w * (n - w)));
    let cc = rat_int(binom_i(n - w, k) * binom_i(n - k, w - k));
    (cc - delta_moment_1perfect(n, w, k)) / phi1
}

/// Closed form for sum_i C(i,k) A_i of a 1-perfect code (see
/// [`b_moment_1perfect`] for the scope of validity).
pub fn a_moment_1perfect(n: i64, w: i64, k: i64) -> ExactRational {
    let phi1 = rat_int(int(1 + w * (n - w)));
    let cc = rat_int(binom_i(n - w, k) * binom_i(n - k, w - k));
    (rat_int(int(w * (n - w))) * delta_moment_1perfect(n, w, k) + cc) / phi1
}

/// The two-term moment relation for 1-perfect codes:
/// 0 = [1 + k^2 - k(1+n) + nw - w^2] M_k + (1-k+w)^2 M_{k-1}.
pub fn two_term_relation_holds(
    n: i64,
    w: i64,
    k: i64,
    m_k: &ExactRational,
    m_km1: &ExactRational,
) -> bool {
    let c0 = rat_int(int(1 + k * k - k * (1 + n) + n * w - w * w));
    let c1 = rat_int(int((1 - k + w) * (1 - k + w)));
    (c0 * m_k + c1 * m_km1).is_zero()
}

/// The four residue-table expressions for a 1-perfect code in J(2w+a, w),
/// all evaluated through the recurrence path (w >= 5 required so that the
/// index w-5 exists).
pub struct TableExpressions {
    /// sum C(i,w-5) Delta_i (closed form).
    pub d_w5: ExactRational,
    /// A_{w-5} from the size-w block, boundary A_w=1, A_{w-1}=0.
    pub a_w5: ExactRational,
    /// B_{w-5} from the size-(w-2) block, boundary B_{w-2}=1,
    /// B_{w-3}=(w+a)(w+a-1)/6.
    pub b_w5: ExactRational,
    /// C_{w-3} from the size-(w+2) block, boundary C_w=1, C_{w-1}=w(w-1)/6.
    pub c_w3: ExactRational,
}

impl TableExpressions {
    pub fn all_integral(&self) -> bool {
        self.d_w5.is_integer()
            && self.a_w5.is_integer()
            && self.b_w5.is_integer()
            && self.c_w3.is_integer()
    }
}

/// Evaluates the four expressions at (w, a); requires w >= 5.
pub fn table_expressions(w: i64, a: i64) -> TableExpressions {
    assert!(w >= 5, "the index w-5 must exist");
    let u = w + a; // = n - w
    let d_w5 = delta_moment_1perfect(2 * w + a, w, w - 5);
    let a_w5 = config_recurrence_solve(
        w,
        a,
        w,
        w,
        ExactRational::one(),
        ExactRational::zero(),
        5,
    )
    .pop()
    .unwrap();
    let b_w5 = config_recurrence_solve(
        w,
        a,
        w - 2,
        w - 2,
        ExactRational::one(),
        ExactRational::new(int(u * (u - 1)), int(6)),
        3,
    )
    .pop()
    .unwrap();
    let c_w3 = config_recurrence_solve(
        w,
        a,
        w + 2,
        w,
        ExactRational::one(),
        ExactRational::new(int(w * (w - 1)), int(6)),
        3,
    )
    .pop()
    .unwrap();
    TableExpressions {
        d_w5,
        a_w5,
        b_w5,
        c_w3,
    }
}

/// F(w,j) of the 2-perfect J(2w,w) moment recursion.
pub fn recursion_f(w: i64, j: i64) -> ExactInt {
    int(20 + (j - 3) * j * (10 + (j - 3) * j) - 14 * w - 4 * (j - 3) * j * w + 2 * w * w)
}

/// G(w,j) of the 2-perfect J(2w,w) moment recursion.
pub fn recursion_g(w: i64, j: i64) -> ExactInt {
    int(2 * (j - 1) * (j - 1) * (4 + (j - 2) * j - 2 * w))
}

/// Which translate the 2-perfect difference distribution is taken against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TranslateLeader {
    /// Translate-leader at distance 1: M_{w-1} = w - 1.
    Leader1,
    /// Translate-leader at distance 2: M_{w-1} = w.
    Leader2,
}

/// M_{w-j} = sum_i C(i,w-j) Delta_{i,leader} for a 2-perfect code in
/// J(2w,w), by the two-step recursion
/// M_{w-j} = -[F(w,j) M_{w-j+2} + G(w,j) M_{w-j+1}] / ((j-1)^2 j^2),
/// seeded with M_w = 1 and M_{w-1} as per the leader.
pub fn delta_moments_2perfect(w: i64, j: i64, leader: TranslateLeader) -> ExactRational {
    assert!(j >= 0 && j <= w);
    let mut prev2 = ExactRational::one(); // M_w
    if j == 0 {
        return prev2;
    }
    let mut prev1 = rat_int(match leader {
        TranslateLeader::Leader1 => int(w - 1),
        TranslateLeader::Leader2 => int(w),
    });
    for jj in 2..=j {
        let num = rat_int(recursion_f(w, jj)) * &prev2 + rat_int(recursion_g(w, jj)) * &prev1;
        let next = -num / rat_int(int((jj - 1) * (jj - 1) * jj * jj));
        prev2 = prev1;
        prev1 = next;
    }
    prev1
}

/// The three-term moment relation for 2-perfect codes in J(2w,w):
/// 0 = c0 M_k + c1 M_{k-1} + c2 M_{k-2} with the quartic coefficients.
pub fn three_term_relation_holds(
    w: i64,
    k: i64,
    m_k: &ExactRational,
    m_km1: &ExactRational,
    m_km2: &ExactRational,
) -> bool {
    let c0 = int(4)
        + int(k).pow(4)
        + int(5) * int(w).pow(2)
        - int(2) * int(w).pow(3)
        + int(w).pow(4)
        - int(2) * int(k).pow(3) * int(1 + 2 * w)
        + int(k).pow(2) * int(7 + 2 * w + 6 * w * w)
        - int(2 * k) * int(3 + 5 * w - w * w + 2 * w * w * w);
    let c1 = int(2) * int(1 - k + w).pow(2) * (int(4) + int(k).pow(2) + int(w).pow(2) - int(2 * k) * int(1 + w));
    let c2 = int(1 - k + w).pow(2) * int(2 - k + w).pow(2);
    (rat_int(c0) * m_k + rat_int(c1) * m_km1 + rat_int(c2) * m_km2).is_zero()
}

/// The J(2w,w) moment identity connecting difference moments to A-moments:
/// w^2 sum C(i,k) Delta_i = (2wk - k^2 + k) sum C(i,k) A_i
///                          - (w-k+1)^2 sum C(i,k-1) A_i,
/// with counts indexed by ones-in-prefix.
pub fn moment_identity_j2w(
    a_counts: &[u64],
    b_counts: &[u64],
    w: i64,
    k: i64,
) -> bool {
    let binom_weighted = |counts: &[u64], r: i64| -> ExactInt {
        counts
            .iter()
            .enumerate()
            .map(|(i, &c)| binom_i(i as i64, r) * ExactInt::from(c))
            .sum()
    };
    let delta_k: ExactInt = binom_weighted(a_counts, k) - binom_weighted(b_counts, k);
    let lhs = int(w * w) * delta_k;
    let rhs = int(2 * w * k - k * k + k) * binom_weighted(a_counts, k)
        - int((w - k + 1) * (w - k + 1)) * binom_weighted(a_counts, k - 1);
    lhs == rhs
}

/// Power moments vanish for all r <= t iff binomial moments vanish for all
/// r <= t (the Stirling-number conversion makes the two equivalent).
/// Returns the common vanishing verdict; panics if the equivalence itself
/// were ever violated.
pub fn stirling_moment_equivalence(delta: &[ExactInt], t: u32) -> bool {
    let power_vanish = (0..=t).all(|r| {
        delta
            .iter()
            .enumerate()
            .map(|(i, d)| num_traits::pow::pow(int(i as i64), r as usize) * d)
            .sum::<ExactInt>()
            .is_zero()
    });
    let binom_vanish = (0..=t).all(|r| {
        delta
            .iter()
            .enumerate()
            .map(|(i, d)| binom_i(i as i64, r as i64) * d)
            .sum::<ExactInt>()
            .is_zero()
    });
    // cross-check via i^r = sum_v v! C(i,v) S(r,v)
    debug_assert!({
        let mut ok = true;
        for r in 0..=t {
            let direct: ExactInt = delta
                .iter()
                .enumerate()
                .map(|(i, d)| num_traits::pow::pow(int(i as i64), r as usize) * d)
                .sum();
            let mut via = ExactInt::zero();
            for v in 0..=r {
                let mut fact = ExactInt::one();
                for x in 1..=v {
                    fact *= int(x as i64);
                }
                let bsum: ExactInt = delta
                    .iter()
                    .enumerate()
                    .map(|(i, d)| binom_i(i as i64, v as i64) * d)
                    .sum();
                via += fact * stirling2(r as usize, v as usize) * bsum;
            }
            ok &= direct == via;
        }
        ok
    });
    assert_eq!(power_vanish, binom_vanish, "moment equivalence violated");
    power_vanish
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::johnson::{translate_distribution, Code, Word};

    fn rat(n: i64, d: i64) -> ExactRational {
        ExactRational::new(int(n), int(d))
    }

    fn pair_code() -> Code {
        Code::new(
            6,
            3,
            vec![
                Word::new(6, vec![0, 1, 2]).unwrap(),
                Word::new(6, vec![3, 4, 5]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn strength_closed_form_e1() {
        // J(14,7): discriminant 1 + 24 = 25, phi = (13-5)/2 = 4
        let r = strength(14, 7, 1);
        assert_eq!(r.phi, Some(4));
        match r.path {
            StrengthPath::ClosedForm1 { discriminant, root } => {
                assert_eq!(discriminant, int(25));
                assert_eq!(root, Some(int(5)));
            }
            other => panic!("unexpected path {other:?}"),
        }
        // J(15,7): discriminant 4 + 24 = 28 not a square -> absent
        let r = strength(15, 7, 1);
        assert_eq!(r.phi, None);
    }

    #[test]
    fn strength_matches_sigma_root_e1() {
        for n in 4..=40i64 {
            for w in 2..=n / 2 {
                let closed = strength(n, w, 1).phi;
                let scanned = (1..w).find(|&p| sigma_e(n, w, p + 1, 1).is_zero());
                assert_eq!(closed, scanned, "n={n} w={w}");
            }
        }
    }

    #[test]
    fn strength_of_trivial_code_matches_enumeration() {
        // the J(6,3) pair code is a 1-design but not a 2-design
        let r = strength(6, 3, 1);
        assert_eq!(r.phi, Some(1));
        assert!(sigma_e(6, 3, 2, 1).is_zero());
        assert!(!sigma_e(6, 3, 1, 1).is_zero());
    }

    #[test]
    fn sigma_never_vanishes_at_zero() {
        for n in 2..=24i64 {
            for w in 1..=n / 2 {
                for e in 1..=3 {
                    assert!(sigma_e(n, w, 0, e) > ExactInt::zero(), "n={n} w={w} e={e}");
                }
            }
        }
    }

    #[test]
    fn strength_e2_pell_row_zero() {
        // w=2: inner radicand 5-12+8 = 1, both branches evaluated exactly
        let r = strength(4, 2, 2);
        match &r.path {
            StrengthPath::ClosedForm2 {
                inner_radicand,
                inner_root,
                branches,
            } => {
                assert_eq!(inner_radicand, &int(1));
                assert_eq!(inner_root, &Some(int(1)));
                assert_eq!(branches.len(), 2);
                // outer radicands 8*2-11 -/+ 4 = 1 and 9
                assert_eq!(branches[0].outer_radicand, int(1));
                assert_eq!(branches[1].outer_radicand, int(9));
            }
            other => panic!("unexpected path {other:?}"),
        }
    }

    #[test]
    fn recurrence_reproduces_pair_code_distribution() {
        // J(6,3), k=3 aligned: boundary A_3=1, A_2=0 gives (1,0,0,1)
        let solved = config_recurrence_solve(
            3,
            0,
            3,
            3,
            ExactRational::one(),
            ExactRational::zero(),
            3,
        );
        // solved = [A_3, A_2, A_1, A_0]
        assert_eq!(
            solved,
            vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(1, 1)]
        );
        // and the enumerated distribution satisfies every equation
        let dist = crate::johnson::configuration_distribution(&pair_code(), 3);
        let values: Vec<ExactRational> = dist
            .counts
            .iter()
            .map(|&c| rat_int(ExactInt::from(c)))
            .collect();
        for i in 0..=3 {
            assert!(recurrence_holds_at(&values, 3, 0, 3, i, MidCoefficient::Corrected));
        }
    }

    #[test]
    fn printed_middle_coefficient_fails() {
        // regression: the as-printed middle coefficient contradicts the
        // J(6,3) oracle at (i,k,w,a) = (3,3,3,0): LHS 7 != RHS 1
        let values = vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(1, 1)];
        assert!(recurrence_holds_at(&values, 3, 0, 3, 3, MidCoefficient::Corrected));
        assert!(!recurrence_holds_at(&values, 3, 0, 3, 3, MidCoefficient::AsPrinted));
        let (_, mid, _, rhs) = recurrence_row(3, 0, 3, 3, MidCoefficient::AsPrinted);
        assert_eq!(mid, int(7));
        assert_eq!(rhs, int(1));
    }

    #[test]
    fn corrected_mid_specializes_to_k_eq_w_proof_coefficients() {
        for w in 1..=30i64 {
            for a in 0..=30 {
                let n = 2 * w + a;
                for i in 0..=w {
                    let (cp, cm, cn, _) = recurrence_row(w, a, w, i, MidCoefficient::Corrected);
                    assert_eq!(cp, int((i + 1) * (i + 1 + n - 2 * w)));
                    assert_eq!(cm, int(1 + (w - i) * (n - 2 * w + 2 * i)));
                    assert_eq!(cn, int((w - i + 1) * (w - i + 1)));
                }
            }
        }
    }

    #[test]
    fn translate_satisfies_recurrence_too() {
        // the leader-1 translate distribution of the pair code satisfies
        // the same equations
        let (_, dist) = translate_distribution(&pair_code(), 1, 1).unwrap();
        let values: Vec<ExactRational> = dist
            .counts
            .iter()
            .map(|&c| rat_int(ExactInt::from(c)))
            .collect();
        for i in 0..=3 {
            assert!(recurrence_holds_at(&values, 3, 0, 3, i, MidCoefficient::Corrected));
        }
    }

    #[test]
    fn delta_moment_boundary_values() {
        for n in 6..=40i64 {
            for w in 2..=n / 2 {
                assert_eq!(delta_moment_1perfect(n, w, w), rat(1, 1));
                assert_eq!(delta_moment_1perfect(n, w, w - 1), rat(w - 1, 1));
            }
        }
    }

    #[test]
    fn closed_forms_satisfy_two_term_relation() {
        for w in 2..=25i64 {
            for a in 0..=25 {
                let n = 2 * w + a;
                for k in 1..=w {
                    let mk = delta_moment_1perfect(n, w, k);
                    let mkm1 = delta_moment_1perfect(n, w, k - 1);
                    // the relation holds exactly when the k-coefficient
                    // times the product telescopes; check it directly
                    let c0 = rat_int(int(1 + k * k - k * (1 + n) + n * w - w * w));
                    let c1 = rat_int(int((1 - k + w) * (1 - k + w)));
                    assert!(
                        (c0 * &mk + c1 * &mkm1).is_zero(),
                        "w={w} a={a} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn relation_at_phi_plus_one_reproduces_strength_equation() {
        // at k = phi+1 the k-coefficient 1+k^2-k(1+n)+nw-w^2 vanishes
        for (n, w) in [(14i64, 7i64), (6, 3), (30, 11)] {
            if let Some(phi) = strength(n, w, 1).phi {
                let k = phi + 1;
                assert_eq!(int(1 + k * k - k * (1 + n) + n * w - w * w), int(0), "n={n} w={w}");
            }
        }
    }

    #[test]
    fn ab_closed_forms_match_pair_code_enumeration() {
        // the A/B closed forms describe an actual perfect code; certify
        // them against the enumerated J(6,3) distributions
        let code = pair_code();
        let (_, a_dist) = translate_distribution(&code, 1, 0).unwrap();
        let (_, b_dist) = translate_distribution(&code, 1, 1).unwrap();
        let moment = |counts: &[u64], k: i64| -> ExactRational {
            rat_int(
                counts
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| binom_i(i as i64, k) * ExactInt::from(c))
                    .sum(),
            )
        };
        for k in 2..=3 {
            assert_eq!(a_moment_1perfect(6, 3, k), moment(&a_dist.counts, k));
            assert_eq!(b_moment_1perfect(6, 3, k), moment(&b_dist.counts, k));
            assert_eq!(
                delta_moment_1perfect(6, 3, k),
                moment(&a_dist.counts, k) - moment(&b_dist.counts, k)
            );
        }
    }

    #[test]
    fn table_expression_d_w5() {
        // closed form (w-1)(a-w+3)(2a-w+7)(3a-w+13)(4a-w+21)/(5!)^2
        for w in 5..=20i64 {
            for a in -3..=20 {
                let d = delta_moment_1perfect(2 * w + a, w, w - 5);
                let expect = rat(
                    (w - 1) * (a - w + 3) * (2 * a - w + 7) * (3 * a - w + 13) * (4 * a - w + 21),
                    14400,
                );
                assert_eq!(d, expect, "w={w} a={a}");
            }
        }
    }

    /// Printed polynomial for A_{w-5} (verified against the recurrence).
    fn a_w5_printed(w: i64, a: i64) -> ExactRational {
        rat(w * (w - 1) * (w + a) * (w + a - 1), 14400)
            * rat_int(int(a * a * (26 + (w - 9) * w)
                + (w - 3) * (-181 + w * (87 + (w - 15) * w))
                + a * (-221 + w * (132 + w * (2 * w - 27)))))
    }

    /// Printed polynomial for B_{w-5}.
    fn b_w5_printed(w: i64, a: i64) -> ExactRational {
        rat((w + a - 1) * (w + a), 720)
            * rat_int(int(a * a * (26 + (w - 9) * w)
                + (w - 3) * (19 + w * (-3 + (w - 5) * w))
                + a * (-21 + w * (42 + w * (2 * w - 17)))))
    }

    /// Polynomial for C_{w-3} with the a-term as a separate summand (the
    /// reading of the printed expression that matches the recurrence).
    fn c_w3_printed(w: i64, a: i64) -> ExactRational {
        rat(w * (w - 1), 720)
            * rat_int(int(a * a * (-4 + (w + 1) * w)
                + (w - 3) * (19 + w * (-3 + (w - 5) * w))
                + a * (49 + w * (-18 + w * (2 * w - 7)))))
    }

    #[test]
    fn table_expressions_match_polynomials() {
        for w in 5..=25i64 {
            for a in -5..=25 {
                let t = table_expressions(w, a);
                assert_eq!(t.a_w5, a_w5_printed(w, a), "A w={w} a={a}");
                assert_eq!(t.b_w5, b_w5_printed(w, a), "B w={w} a={a}");
                assert_eq!(t.c_w3, c_w3_printed(w, a), "C w={w} a={a}");
            }
        }
    }

    #[test]
    fn two_perfect_moments_match_printed_forms() {
        use TranslateLeader::*;
        // polynomial identities of degree <= 8, checked on 33 points
        for w in 8..=40i64 {
            let m = |j, l| delta_moments_2perfect(w, j, l);
            assert_eq!(m(2, Leader1), rat((w - 1) * (w - 2), 2));
            assert_eq!(m(2, Leader2), rat((w + 1) * (w - 2), 2));
            assert_eq!(m(3, Leader1), rat((w - 1) * (w - 2) * (w - 3), 6));
            assert_eq!(m(3, Leader2), rat((w - 2) * (3 * w * w - 5 * w - 14), 18));
            assert_eq!(m(4, Leader1), rat((w - 1) * (w - 2) * (w - 5) * (5 * w - 14), 144));
            assert_eq!(m(4, Leader2), rat((w - 2) * (w - 5) * (5 * w * w - 7 * w - 26), 144));
            // leading coefficient corrected to 17 (the value the recursion
            // and the printed j=6,7 rows force); the text prints 7
            assert_eq!(
                m(5, Leader1),
                rat((w - 1) * (w - 2) * (w - 5), 3600)
                    * rat_int(int(17 * w * w - 171 * w + 334))
            );
            assert_eq!(
                m(5, Leader2),
                rat((w - 2) * (w - 5), 3600)
                    * rat_int(int(17 * w * w * w - 147 * w * w + 66 * w + 680))
            );
            assert_eq!(
                m(6, Leader1),
                rat(2 * (w - 1) * (w - 2) * (w - 5), 129600)
                    * rat_int(int(-5684 + 3544 * w - 589 * w * w + 29 * w * w * w))
            );
            assert_eq!(
                m(6, Leader2),
                rat(2 * (w - 2) * (w - 5), 129600)
                    * rat_int(int(-12228 + 228 * w + 2663 * w * w - 548 * w * w * w
                        + 29 * w * w * w * w))
            );
            assert_eq!(
                m(7, Leader1),
                rat(2 * (w - 1) * (w - 2) * (w - 5), 6350400)
                    * rat_int(int(262324 - 185444 * w + 39797 * w * w - 3376 * w * w * w
                        + 99 * w * w * w * w))
            );
            assert_eq!(
                m(7, Leader2),
                rat(2 * (w - 2) * (w - 5), 6350400)
                    * rat_int(int(585224 - 59628 * w - 123650 * w * w
                        + 34855 * w * w * w
                        - 3236 * w * w * w * w
                        + 99 * w * w * w * w * w))
            );
        }
    }

    #[test]
    fn three_term_relation_annihilates_recursion_output() {
        use TranslateLeader::*;
        for w in 8..=50i64 {
            for leader in [Leader1, Leader2] {
                for j in 2..=(w - 1).min(12) {
                    let k = w - j + 2;
                    let mk = delta_moments_2perfect(w, j - 2, leader);
                    let mkm1 = delta_moments_2perfect(w, j - 1, leader);
                    let mkm2 = delta_moments_2perfect(w, j, leader);
                    assert!(
                        three_term_relation_holds(w, k, &mk, &mkm1, &mkm2),
                        "w={w} j={j} leader={leader:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn moment_identity_on_pair_code() {
        // J(6,3) is J(2w,w) with w=3: check the identity with enumerated
        // counts for k = 2, 3
        let code = pair_code();
        let (_, a_dist) = translate_distribution(&code, 1, 0).unwrap();
        let (_, b_dist) = translate_distribution(&code, 1, 1).unwrap();
        for k in 2..=3i64 {
            assert!(moment_identity_j2w(&a_dist.counts, &b_dist.counts, 3, k));
        }
    }

    #[test]
    fn moment_identity_degenerates_below_strength() {
        // for k <= strength both sides are forced by the design property;
        // k=1 on the pair code gives 0 = 0 after the closed-form values
        let code = pair_code();
        let (_, a_dist) = translate_distribution(&code, 1, 0).unwrap();
        let (_, b_dist) = translate_distribution(&code, 1, 1).unwrap();
        assert!(moment_identity_j2w(&a_dist.counts, &b_dist.counts, 3, 1));
    }

    #[test]
    fn stirling_equivalence_cases() {
        // all zeros: vanishes at every t
        let zeros = vec![int(0); 6];
        for t in 0..=5 {
            assert!(stirling_moment_equivalence(&zeros, t));
        }
        // sum zero but first moment nonzero: t=0 passes, t=1 fails
        let delta = vec![int(1), int(0), int(-1)];
        assert!(stirling_moment_equivalence(&delta, 0));
        assert!(!stirling_moment_equivalence(&delta, 1));
        // random-ish vectors: the equivalence assertion inside must hold
        let delta = vec![int(3), int(-7), int(2), int(5), int(-3)];
        for t in 0..=8 {
            let _ = stirling_moment_equivalence(&delta, t);
        }
    }

    #[test]
    fn master_cross_validation_small() {
        // closed forms vs recurrence-path moments vs the two-term relation
        // on a small grid (the full grid is an acceptance run)
        for n in 6..=24i64 {
            for w in 2..=n / 2 {
                let Some(phi) = strength(n, w, 1).phi else { continue };
                let a = n - 2 * w;
                // recurrence path: solve A (1,0) and B (0,1) down to 0
                let a_vals = config_recurrence_solve(
                    w,
                    a,
                    w,
                    w,
                    ExactRational::one(),
                    ExactRational::zero(),
                    w as usize,
                );
                let b_vals = config_recurrence_solve(
                    w,
                    a,
                    w,
                    w,
                    ExactRational::zero(),
                    ExactRational::one(),
                    w as usize,
                );
                // a_vals[j] = A_{w-j}
                let moment = |vals: &[ExactRational], k: i64| -> ExactRational {
                    vals.iter()
                        .enumerate()
                        .map(|(j, v)| {
                            rat_int(binom_i(w - j as i64, k)) * v
                        })
                        .sum()
                };
                for k in (phi + 1)..=w {
                    let d_closed = delta_moment_1perfect(n, w, k);
                    let d_rec = moment(&a_vals, k) - moment(&b_vals, k);
                    assert_eq!(d_closed, d_rec, "D n={n} w={w} k={k}");
                    // the A/B closed forms differ from D by the same
                    // rational, so their difference must reproduce D
                    assert_eq!(
                        a_moment_1perfect(n, w, k) - b_moment_1perfect(n, w, k),
                        d_closed,
                        "A-B n={n} w={w} k={k}"
                    );
                    let d_prev = delta_moment_1perfect(n, w, k - 1);
                    assert!(two_term_relation_holds(n, w, k, &d_closed, &d_prev));
                }
            }
        }
    }

    #[test]
    fn binomial_sum_identity_used_by_proof() {
        // sum_i C(i,k) C(w,i) C(n-w,i) = C(n-w,k) C(n-k,w-k)
        for n in 1..=24i64 {
            for w in 0..=n {
                for k in 0..=w {
                    let lhs: ExactInt = (0..=w)
                        .map(|i| binom_i(i, k) * binom_i(w, i) * binom_i(n - w, i))
                        .sum();
                    assert_eq!(lhs, binom_i(n - w, k) * binom_i(n - k, w - k));
                }
            }
        }
    }

    #[test]
    fn appendix_binomial_identities() {
        for i in 0..=60i64 {
            for k in 0..=i {
                // C(i,k)(i+1) = (k+1) C(i+1,k+1)
                assert_eq!(
                    binom_i(i, k) * int(i + 1),
                    int(k + 1) * binom_i(i + 1, k + 1)
                );
                // C(i,k) i = k C(i,k) + (k+1) C(i,k+1)
                assert_eq!(
                    binom_i(i, k) * int(i),
                    int(k) * binom_i(i, k) + int(k + 1) * binom_i(i, k + 1)
                );
                // C(i-1,k-1) i^2 = C(i,k) i k
                if k >= 1 && i >= 1 {
                    assert_eq!(
                        binom_i(i - 1, k - 1) * int(i * i),
                        binom_i(i, k) * int(i * k)
                    );
                }
                // C(i,k) i^2 expansion
                assert_eq!(
                    binom_i(i, k) * int(i * i),
                    int(k * k) * binom_i(i, k)
                        + int((k + 1) * (2 * k + 1)) * binom_i(i, k + 1)
                        + int((k + 1) * (k + 2)) * binom_i(i, k + 2)
                );
            }
        }
    }
}
