//! The Pell-equation family behind 2-perfect codes in J(2w,w).
//!
//! An integral strength for a 2-perfect code in J(2w,w) forces the negative
//! Pell equation x^2 - 2y^2 = -1 with x = 2w - 3, so every admissible w
//! comes from a fundamental-solution orbit. Each orbit member is then pushed
//! through the residue and perfect-square conditions; a code can exist only
//! if its row survives all of them.

use crate::exactmath::{is_square, ExactInt};
use num_traits::{One, Zero};

/// One solution row of x^2 - 2y^2 = -1 with its derived quantities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellSolution {
    /// Orbit index: t = 0 is the fundamental solution (1,1).
    pub t: u64,
    /// k = 4t + 1.
    pub k: ExactInt,
    pub x: ExactInt,
    pub y: ExactInt,
    /// w = (x+3)/2, the only weight compatible with this solution.
    pub w: ExactInt,
    /// 1 + 4(x-y): the outer radicand of the minus strength branch.
    pub col2: ExactInt,
    /// 1 + 4(x+y): the outer radicand of the plus strength branch.
    pub col3: ExactInt,
}

/// The first `t_max + 1` solutions of x^2 - 2y^2 = -1, generated by the
/// step (x,y) -> (17x + 24y, 12x + 17y) from (1,1). Every row is
/// re-verified against the Pell equation before being returned.
pub fn pell_family(t_max: u64) -> Vec<PellSolution> {
    let mut out = Vec::with_capacity(t_max as usize + 1);
    let mut x = ExactInt::one();
    let mut y = ExactInt::one();
    for t in 0..=t_max {
        assert_eq!(
            &x * &x - ExactInt::from(2) * &y * &y,
            ExactInt::from(-1),
            "orbit left the Pell curve at t={t}"
        );
        let four = ExactInt::from(4);
        out.push(PellSolution {
            t,
            k: ExactInt::from(4 * t + 1),
            x: x.clone(),
            y: y.clone(),
            w: (&x + ExactInt::from(3)) / ExactInt::from(2),
            col2: ExactInt::one() + &four * (&x - &y),
            col3: ExactInt::one() + &four * (&x + &y),
        });
        let nx = ExactInt::from(17) * &x + ExactInt::from(24) * &y;
        let ny = ExactInt::from(12) * &x + ExactInt::from(17) * &y;
        x = nx;
        y = ny;
    }
    out
}

/// The binomial-sum form of x at orbit index t (with m = 2t):
/// x = sum_j C(2m+1, 2j) 2^j.
pub fn x_binomial_sum(t: u64) -> ExactInt {
    let m = 2 * t;
    let mut total = ExactInt::zero();
    let mut pow2 = ExactInt::one();
    for j in 0..=((2 * m + 1) / 2) {
        total += crate::exactmath::binom_i((2 * m + 1) as i64, (2 * j) as i64) * &pow2;
        pow2 *= ExactInt::from(2);
    }
    total
}

/// The binomial-sum form of the plus-branch radicand:
/// 1 + sum_{j=0}^{2t} C(4t+2, 2j+1) 2^{j+2}.
pub fn c2_binomial_sum(t: u64) -> ExactInt {
    let mut total = ExactInt::one();
    let mut pow2 = ExactInt::from(4);
    for j in 0..=(2 * t) {
        total += crate::exactmath::binom_i((4 * t + 2) as i64, (2 * j + 1) as i64) * &pow2;
        pow2 *= ExactInt::from(2);
    }
    total
}

/// The binomial-sum form of the minus-branch radicand:
/// 1 + sum_{j=0}^{2t-1} C(4t, 2j+1) 2^{j+2}.
pub fn d2_binomial_sum(t: u64) -> ExactInt {
    let mut total = ExactInt::one();
    if t == 0 {
        return total;
    }
    let mut pow2 = ExactInt::from(4);
    for j in 0..=(2 * t - 1) {
        total += crate::exactmath::binom_i((4 * t) as i64, (2 * j + 1) as i64) * &pow2;
        pow2 *= ExactInt::from(2);
    }
    total
}

/// The necessary-condition verdicts for one Pell row. Every condition is
/// evaluated unconditionally so a report always shows the full picture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem50Report {
    pub solution: PellSolution,
    /// w = 2 (mod 12), equivalently x = 1 (mod 24).
    pub w_residue_pass: bool,
    /// x = 1 (mod 3).
    pub mod3_pass: bool,
    /// The plus-branch radicand 1+4(x+y) is a perfect square.
    pub c2_square: bool,
    /// The minus-branch radicand 1+4(x-y) is a perfect square.
    pub d2_square: bool,
    /// w >= 2e+1 = 5: a 2-perfect code needs room for radius-2 balls.
    pub w_at_least_5: bool,
}

impl Theorem50Report {
    /// True when no condition excludes the row: a 2-perfect code in
    /// J(2w,w) could only exist at a surviving row.
    pub fn survives(&self) -> bool {
        self.w_residue_pass
            && self.mod3_pass
            && (self.c2_square || self.d2_square)
            && self.w_at_least_5
    }
}

/// Evaluates every Theorem-50-style condition on one Pell row.
pub fn theorem50_report(solution: &PellSolution) -> Theorem50Report {
    let twelve = ExactInt::from(12);
    let twenty_four = ExactInt::from(24);
    let three = ExactInt::from(3);
    let w_mod12 = ((&solution.w % &twelve) + &twelve) % &twelve;
    let x_mod24 = ((&solution.x % &twenty_four) + &twenty_four) % &twenty_four;
    let w_residue_pass = w_mod12 == ExactInt::from(2);
    // the two formulations are equivalent; keep both wired together
    debug_assert_eq!(w_residue_pass, x_mod24 == ExactInt::one());
    let mod3_pass = ((&solution.x % &three) + &three) % &three == ExactInt::one();
    Theorem50Report {
        w_residue_pass,
        mod3_pass,
        c2_square: is_square(&solution.col3).is_some(),
        d2_square: is_square(&solution.col2).is_some(),
        w_at_least_5: solution.w >= ExactInt::from(5),
        solution: solution.clone(),
    }
}

/// Looks up the orbit row for a given weight and reports on it.
///
/// Returns `None` when x = 2w - 3 does not solve x^2 - 2y^2 = -1, i.e. when
/// the e=2 strength of J(2w,w) is not integral (itself a nonexistence
/// witness).
pub fn report_for_weight(w: &ExactInt) -> Option<Theorem50Report> {
    let x = ExactInt::from(2) * w - ExactInt::from(3);
    if x < ExactInt::one() {
        return None;
    }
    // x is odd, so x^2 - 2y^2 = -1 iff y^2 = (x^2 + 1)/2
    let y2 = (&x * &x + ExactInt::one()) / ExactInt::from(2);
    is_square(&y2)?;
    // every positive solution lies on the fundamental orbit; walk to it
    let mut t = 0u64;
    let mut cx = ExactInt::one();
    loop {
        let sol = pell_family(t).pop().unwrap();
        cx.clone_from(&sol.x);
        if cx >= x {
            return (cx == x).then(|| theorem50_report(&sol));
        }
        t += 1;
    }
}

/// Applies the full condition battery to every Pell row with n = 2w below
/// `n_limit`, returning one report per row (in orbit order). A 2-perfect
/// code in J(2w,w) with 2w < n_limit can exist only at a surviving row.
pub fn exclusion_scan(n_limit: &ExactInt) -> Vec<Theorem50Report> {
    let mut out = Vec::new();
    let mut t = 0u64;
    loop {
        // regenerate up to t and take the last row: the orbit is cheap
        let sol = pell_family(t).pop().unwrap();
        if ExactInt::from(2) * &sol.w >= *n_limit {
            break;
        }
        out.push(theorem50_report(&sol));
        t += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> ExactInt {
        s.parse().unwrap()
    }

    #[test]
    fn table_rows_exact() {
        let rows = pell_family(10);
        let expect: [(&str, &str, &str, &str); 11] = [
            ("1", "9", "1", "2"),
            ("49", "281", "41", "22"),
            ("1633", "9513", "1393", "698"),
            ("55441", "323129", "47321", "23662"),
            ("1883329", "10976841", "1607521", "803762"),
            ("63977713", "372889433", "54608393", "27304198"),
            ("2173358881", "12667263849", "1855077841", "927538922"),
            ("73830224209", "430314081401", "63018038201", "31509019102"),
            ("2508054264193", "14618011503753", "2140758220993", "1070379110498"),
            (
                "85200014758321",
                "496582077046169",
                "72722761475561",
                "36361380737782",
            ),
            (
                "2894292447518689",
                "16869172608065961",
                "2470433131948081",
                "1235216565974042",
            ),
        ];
        assert_eq!(rows.len(), 11);
        for (row, (c2, c3, x, w)) in rows.iter().zip(expect.iter()) {
            assert_eq!(row.col2, big(c2), "t={}", row.t);
            assert_eq!(row.col3, big(c3), "t={}", row.t);
            assert_eq!(row.x, big(x), "t={}", row.t);
            assert_eq!(row.w, big(w), "t={}", row.t);
            assert_eq!(row.k, ExactInt::from(4 * row.t + 1));
        }
    }

    #[test]
    fn binomial_sums_reproduce_orbit() {
        for row in pell_family(12) {
            assert_eq!(x_binomial_sum(row.t), row.x, "x at t={}", row.t);
            assert_eq!(c2_binomial_sum(row.t), row.col3, "c2 at t={}", row.t);
            assert_eq!(d2_binomial_sum(row.t), row.col2, "d2 at t={}", row.t);
        }
    }

    #[test]
    fn residue_equivalence_and_parity() {
        // x mod 24 alternates 1, 17; so even-t rows pass the residue
        // conditions and odd-t rows fail both
        for row in pell_family(20) {
            let rep = theorem50_report(&row);
            let even = row.t % 2 == 0;
            assert_eq!(rep.w_residue_pass, even, "t={}", row.t);
            assert_eq!(rep.mod3_pass, even, "t={}", row.t);
        }
    }

    #[test]
    fn fundamental_row_passes_everything_but_size() {
        let rep = theorem50_report(&pell_family(0)[0]);
        assert!(rep.w_residue_pass);
        assert!(rep.mod3_pass);
        assert!(rep.c2_square); // 9 = 3^2
        assert!(rep.d2_square); // 1 = 1^2
        assert!(!rep.w_at_least_5); // w = 2 < 5
        assert!(!rep.survives());
    }

    #[test]
    fn scan_below_threshold_has_no_survivor() {
        let reports = exclusion_scan(&big("2500000000000000"));
        // rows t = 0..10 have n = 2w below 2.5e15
        assert_eq!(reports.len(), 11);
        assert!(reports.iter().all(|r| !r.survives()));
        // and each even-t row with t >= 2 fails only on the square tests
        for r in &reports {
            if r.solution.t >= 2 && r.solution.t % 2 == 0 {
                assert!(r.w_residue_pass && r.mod3_pass && r.w_at_least_5);
                assert!(!r.c2_square && !r.d2_square, "t={}", r.solution.t);
            }
        }
    }

    #[test]
    fn orbit_matches_strength_branches() {
        // x = 2w-3 puts y^2 = 2w^2 - 6w + 5, the inner radicand of the
        // e=2 strength formula; the outer radicands are the table columns
        use crate::moments::{strength, StrengthPath};
        for row in pell_family(4) {
            let w = i64::try_from(row.w.clone()).unwrap();
            let r = strength(2 * w, w, 2);
            match r.path {
                StrengthPath::ClosedForm2 {
                    inner_radicand,
                    inner_root,
                    branches,
                } => {
                    assert_eq!(inner_radicand, &row.y * &row.y);
                    assert_eq!(inner_root, Some(row.y.clone()));
                    assert_eq!(branches[0].outer_radicand, row.col2);
                    assert_eq!(branches[1].outer_radicand, row.col3);
                }
                other => panic!("unexpected path {other:?}"),
            }
        }
    }
}
