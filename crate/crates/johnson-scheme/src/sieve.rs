//! The rule engine: every checkable necessary condition for e-perfect codes
//! in J(n,w) and in doubly-constant-weight spaces, applied pointwise or over
//! parameter ranges, plus the residue-table and residue-class machinery.
//!
//! Each rule is a pure function of the (canonicalized) parameters. A failing
//! verdict always carries a self-contained witness; "unknown" propagates
//! from the factorization budget and never excludes a point.

use crate::designs::{steiner_conditions, SteinerCondition};
use crate::exactmath::{
    binom_i, binom_valuation, factorize, is_squarefree, ExactInt, ExactRational, Squarefree,
    DEFAULT_RHO_BUDGET,
};
use crate::johnson::{sphere_size, sphere_size_doubly};
use crate::moments::{delta_moments_2perfect, strength, TranslateLeader};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

fn int(x: i64) -> ExactInt {
    ExactInt::from(x)
}

fn rat_int(x: ExactInt) -> ExactRational {
    ExactRational::from_integer(x)
}

fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(int(n), int(d))
}

fn isqrt_u64(x: u64) -> u64 {
    if x < 2 {
        return x;
    }
    let mut r = (x as f64).sqrt() as u64;
    while r.checked_mul(r).map_or(true, |v| v > x) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).map_or(false, |v| v <= x) {
        r += 1;
    }
    r
}

/// Parameters of a hypothetical e-perfect code in J(n,w).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct JohnsonParams {
    pub n: u64,
    pub w: u64,
    pub e: u64,
}

/// Parameters of a hypothetical e-perfect doubly-constant-weight code,
/// written (w1, n1, w2, n2, e) as in the source material.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DoublyParams {
    pub w1: u64,
    pub n1: u64,
    pub w2: u64,
    pub n2: u64,
    pub e: u64,
}

/// Outcome of one rule at one point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The factorization budget ran out; the rule can neither pass nor fail.
    Unknown,
    NotApplicable,
}

/// One rule's verdict with the exact values that decide it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleVerdict {
    pub rule: &'static str,
    pub status: Status,
    pub witness: String,
}

/// Families of perfect codes that exist trivially; the sieve's rules target
/// nontrivial codes and are skipped for tagged points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrivialFamily {
    /// e = 0: the whole space.
    WholeSpace,
    /// e = w (or w1 + w2): a single word.
    SingleWord,
    /// Two disjoint words covering everything: n = 2w, w odd, e = (w-1)/2
    /// (and the doubly analogue).
    DisjointPair,
}

impl TrivialFamily {
    pub fn label(&self) -> &'static str {
        match self {
            TrivialFamily::WholeSpace => "whole-space",
            TrivialFamily::SingleWord => "single-word",
            TrivialFamily::DisjointPair => "disjoint-pair",
        }
    }
}

/// Overall conclusion for one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conclusion {
    Trivial(TrivialFamily),
    Excluded(Vec<&'static str>),
    Survives,
}

/// The full rule-engine output for one Johnson point.
#[derive(Clone, Debug)]
pub struct PointReport {
    /// The parameters as given.
    pub params: JohnsonParams,
    /// The canonical side (w <= n-w) the rules were evaluated on.
    pub canonical: JohnsonParams,
    pub verdicts: Vec<RuleVerdict>,
    pub conclusion: Conclusion,
}

/// Rule catalog in canonical report order.
pub const RULE_IDS: &[&str] = &[
    "C15.bounds",
    "T8.narrow",
    "T9.roos",
    "C18.mod",
    "T24.mod",
    "L39.mod12",
    "T29.mod4",
    "EQ1.strength",
    "C25.primeform",
    "Gordon.sqfree",
    "L41.factors",
    "T38.lambda",
    "T47.moments",
    "SP.div",
    "T26.div",
    "T34.psquare",
    "T16.steiner",
    "T17.steiner",
    "T22.steiner",
    "C23.steiner",
    "P49.residues",
    "T50.pell",
];

// Range-sieve evaluation order: cheap integer gates first, then the rules
// that can prune with small factorizations, heavy symbolic rules last. The
// set of rules is identical to RULE_IDS; only the order differs, which
// cannot change the surviving set (rules are independent pure predicates).
const FAST_ORDER: &[&str] = &[
    "C15.bounds",
    "T8.narrow",
    "T9.roos",
    "C18.mod",
    "T24.mod",
    "L39.mod12",
    "T29.mod4",
    "EQ1.strength",
    "C25.primeform",
    "Gordon.sqfree",
    "L41.factors",
    "T26.div",
    "T47.moments",
    "T38.lambda",
    "SP.div",
    "T34.psquare",
    "T16.steiner",
    "T17.steiner",
    "T22.steiner",
    "C23.steiner",
    "P49.residues",
    "T50.pell",
];

/// Tags parameter points at which a perfect code exists trivially.
pub fn classify_trivial(n: u64, w: u64, e: u64) -> Option<TrivialFamily> {
    let (w, _) = canonical_w(n, w);
    if e == 0 {
        return Some(TrivialFamily::WholeSpace);
    }
    if e == w {
        return Some(TrivialFamily::SingleWord);
    }
    if n == 2 * w && w % 2 == 1 && e == (w - 1) / 2 {
        return Some(TrivialFamily::DisjointPair);
    }
    None
}

/// Tags doubly-constant-weight points at which a perfect code exists
/// trivially.
pub fn classify_trivial_doubly(p: &DoublyParams) -> Option<TrivialFamily> {
    if p.e == 0 {
        return Some(TrivialFamily::WholeSpace);
    }
    if p.e == p.w1 + p.w2 {
        return Some(TrivialFamily::SingleWord);
    }
    if p.n1 == 2 * p.w1
        && p.n2 == 2 * p.w2
        && (p.w1 + p.w2) % 2 == 1
        && p.e == (p.w1 + p.w2 - 1) / 2
    {
        return Some(TrivialFamily::DisjointPair);
    }
    None
}

fn canonical_w(n: u64, w: u64) -> (u64, bool) {
    if 2 * w > n {
        (n - w, true)
    } else {
        (w, false)
    }
}

fn rule_enabled(filter: Option<&[String]>, id: &str) -> bool {
    filter.map_or(true, |f| f.iter().any(|r| r == id))
}

/// The strength used by the rules, where a closed form or a cheap scan is
/// available; `None` means "not determined" (only e=1 treats a missing
/// integral strength as an exclusion, via EQ1.strength).
fn strength_phi(n: i64, w: i64, e: i64) -> Option<i64> {
    if w < 1 {
        return None;
    }
    if e == 1 || (e == 2 && n == 2 * w) || w <= 64 {
        strength(n, w, e).phi
    } else {
        None
    }
}

struct Ctx {
    n: i64,
    w: i64,
    e: i64,
}

impl Ctx {
    fn a(&self) -> i64 {
        self.n - 2 * self.w
    }
    fn phi1(&self) -> i64 {
        1 + self.w * (self.n - self.w)
    }
    fn sphere(&self) -> ExactInt {
        sphere_size(self.n as u64, self.w as u64, self.e as u64)
    }
}

fn verdict(rule: &'static str, status: Status, witness: String) -> RuleVerdict {
    RuleVerdict {
        rule,
        status,
        witness,
    }
}

fn pass(rule: &'static str, witness: String) -> RuleVerdict {
    verdict(rule, Status::Pass, witness)
}

fn fail(rule: &'static str, witness: String) -> RuleVerdict {
    verdict(rule, Status::Fail, witness)
}

fn na(rule: &'static str) -> RuleVerdict {
    verdict(rule, Status::NotApplicable, String::new())
}

fn eval_rule(id: &'static str, c: &Ctx, phi: Option<i64>) -> RuleVerdict {
    let (n, w, e, a) = (c.n, c.w, c.e, c.a());
    match id {
        "C15.bounds" => {
            let need = 2 * e + 1;
            if w >= need && n - w >= need {
                pass(id, format!("w={w} and n-w={} are >= {need}", n - w))
            } else {
                fail(id, format!("need w>={need} and n-w>={need}, got w={w}, n-w={}", n - w))
            }
        }
        "T8.narrow" => {
            if a == 1 || a == 2 {
                fail(id, format!("n-2w={a} lies in the excluded narrow band"))
            } else {
                pass(id, format!("n-2w={a}"))
            }
        }
        "T9.roos" => {
            if e * n <= (w - 1) * (2 * e + 1) {
                pass(id, format!("{}*{} <= ({}-1)*{}", e, n, w, 2 * e + 1))
            } else {
                fail(id, format!("{e}*{n}={} > (w-1)(2e+1)={}", e * n, (w - 1) * (2 * e + 1)))
            }
        }
        "C18.mod" => {
            let m = e + 1;
            if w.rem_euclid(m) == e % m && (n - w).rem_euclid(m) == e % m {
                pass(id, format!("w and n-w are both {} (mod {m})", e % m))
            } else {
                fail(id, format!("w={w}, n-w={}: not both {} (mod {m})", n - w, e % m))
            }
        }
        "T24.mod" => {
            let m = (e + 1) * (e + 2);
            if e % 2 == 1 || n % 2 == 0 {
                let mut ok = a % m == 0;
                if e % 2 == 1 && n % 2 != 0 {
                    ok = false;
                }
                if ok {
                    pass(id, format!("{m} divides n-2w={a}"))
                } else {
                    fail(id, format!("need n even and {m} | n-2w; n={n}, n-2w={a}"))
                }
            } else {
                // e even, n odd
                if e % 4 == 0 && a % (m / 2) == 0 {
                    pass(id, format!("e=0 (mod 4) and {} divides n-2w={a}", m / 2))
                } else {
                    fail(
                        id,
                        format!("n odd requires e=0 (mod 4) and {} | n-2w; e={e}, n-2w={a}", m / 2),
                    )
                }
            }
        }
        "L39.mod12" => {
            if e != 1 {
                return na(id);
            }
            let (wr, ur) = (w % 12, (n - w) % 12);
            if (wr == 1 && ur == 1) || (wr == 7 && ur == 7) {
                pass(id, format!("w={wr}, n-w={ur} (mod 12)"))
            } else {
                fail(id, format!("w={wr}, n-w={ur} (mod 12): not both 1 or both 7"))
            }
        }
        "T29.mod4" => {
            if e != 1 {
                return na(id);
            }
            let p = c.phi1();
            if p % 4 == 0 {
                fail(id, format!("1+w(n-w)={p} = 0 (mod 4)"))
            } else {
                pass(id, format!("1+w(n-w)={p} = {} (mod 4)", p % 4))
            }
        }
        "EQ1.strength" => {
            if e != 1 {
                return na(id);
            }
            let disc = (a + 1) * (a + 1) + 4 * (w - 1);
            let r = isqrt_u64(disc as u64) as i64;
            if r * r == disc && (n - 1 - r) % 2 == 0 && (n - 1 - r) / 2 >= 1 {
                pass(id, format!("discriminant {disc} = {r}^2, strength {}", (n - 1 - r) / 2))
            } else {
                fail(id, format!("strength equation has no admissible root: discriminant {disc}"))
            }
        }
        "C25.primeform" => {
            if a <= 0 {
                return na(id);
            }
            match factorize(&int(a), DEFAULT_RHO_BUDGET) {
                None => verdict(id, Status::Unknown, format!("could not factor n-2w={a}")),
                Some(f) => {
                    if f.len() == 1 {
                        let (p, i) = &f[0];
                        fail(id, format!("n-2w={a} = {p}^{i} is a prime power"))
                    } else if f.len() == 2 && f[0].1 == 1 && f[1].1 == 1 {
                        let (q, p) = (&f[0].0, &f[1].0);
                        if *p != ExactInt::from(2) * q - ExactInt::one() {
                            fail(id, format!("n-2w={a} = {q}*{p} with {p} != 2*{q}-1"))
                        } else {
                            pass(id, format!("n-2w={a} = {q}*{p} with p = 2q-1"))
                        }
                    } else {
                        pass(id, format!("n-2w={a} is neither a prime power nor an excluded semiprime"))
                    }
                }
            }
        }
        "Gordon.sqfree" => {
            if e != 1 {
                return na(id);
            }
            match is_squarefree(&int(c.phi1())) {
                Squarefree::Yes => pass(id, format!("sphere size {} is squarefree", c.phi1())),
                Squarefree::No { square_divisor } => fail(
                    id,
                    format!("sphere size {} is divisible by {}^2", c.phi1(), square_divisor),
                ),
                Squarefree::Unknown => {
                    verdict(id, Status::Unknown, format!("squarefreeness of {} undecided", c.phi1()))
                }
            }
        }
        "L41.factors" => {
            if e != 1 {
                return na(id);
            }
            let Some(phi) = phi else { return na(id) };
            let d = w - phi;
            let f1 = w - d + 1;
            let f2 = w + a + d;
            debug_assert_eq!(f1 * f2, c.phi1());
            if f1.gcd(&f2) != 1 {
                return fail(id, format!("gcd({f1},{f2}) = {} > 1", f1.gcd(&f2)));
            }
            for f in [f1, f2] {
                match is_squarefree(&int(f)) {
                    Squarefree::Yes => {}
                    Squarefree::No { square_divisor } => {
                        return fail(id, format!("factor {f} is divisible by {square_divisor}^2"))
                    }
                    Squarefree::Unknown => {
                        return verdict(id, Status::Unknown, format!("squarefreeness of {f} undecided"))
                    }
                }
            }
            pass(id, format!("{f1}*{f2} coprime and both squarefree"))
        }
        "T38.lambda" => {
            if e != 1 {
                return na(id);
            }
            let Some(phi) = phi else { return na(id) };
            let d = w - phi;
            if d < 2 {
                return na(id);
            }
            if ![0, 1, 4, 9].contains(&(phi % 12)) {
                return fail(id, format!("strength w-d={phi} = {} (mod 12)", phi % 12));
            }
            let mut num = ExactInt::one();
            for i in 0..=(d - 2) {
                num *= int(w * d - (d + i * (d - 1)));
            }
            let mut den = int(d) * int(w - d + 1);
            for i in 1..d {
                den *= int(i);
            }
            den *= int(d - 1).pow((d - 1) as u32);
            let lambda = ExactRational::new(num, den);
            if !lambda.is_integer() {
                return fail(id, format!("lambda = {lambda} is not an integer (d={d})"));
            }
            let mut cur = lambda.clone();
            for j in 1..=(w - d) {
                cur *= rat(w * d + j * d - (j + 1), (d - 1) * (d + j));
                if !cur.is_integer() {
                    return fail(id, format!("partial product at s={j} is {cur}, not an integer (d={d})"));
                }
            }
            pass(id, format!("lambda = {lambda} and all partial products integral (d={d})"))
        }
        "T47.moments" => {
            if e != 1 {
                return na(id);
            }
            let Some(phi) = phi else { return na(id) };
            let phi1 = rat_int(int(c.phi1()));
            let wnw = rat_int(int(w * (n - w)));
            let mut dmom = ExactRational::one();
            let mut cc = rat_int(binom_i(n - w, w));
            let mut k = w;
            loop {
                let a_mom = (&wnw * &dmom + &cc) / &phi1;
                let b_mom = (&cc - &dmom) / &phi1;
                if !dmom.is_integer() {
                    return fail(id, format!("difference moment at k={k} is {dmom}"));
                }
                if !a_mom.is_integer() {
                    return fail(id, format!("A-moment at k={k} is {a_mom}"));
                }
                if !b_mom.is_integer() {
                    return fail(id, format!("B-moment at k={k} is {b_mom}"));
                }
                if k == phi + 1 {
                    break;
                }
                let l = w - k + 1;
                dmom *= rat(-((l - 1) * n + l * l - l + 1 - w * (2 * l - 1)), l * l);
                cc *= rat(k, n - w - k + 1) * rat(n - k + 1, w - k + 1);
                k -= 1;
            }
            pass(id, format!("all moments integral for {} < k <= {w}", phi))
        }
        "SP.div" => divisibility_rule(id, c, 0),
        "T26.div" => {
            let t = phi.map_or(e, |p| p.max(e));
            divisibility_rule(id, c, t)
        }
        "T34.psquare" => {
            let mut applicable = false;
            let sphere = c.sphere();
            for p in crate::exactmath::small_primes().iter().take(64) {
                let p2 = int((p * p) as i64);
                if p2 > int(e + 1) {
                    break;
                }
                if (e + 1) % ((p * p) as i64) == 0 {
                    applicable = true;
                    if (&sphere % &p2) != ExactInt::zero() {
                        return fail(id, format!("e+1 = 0 (mod {}^2) but sphere size {sphere} is not", p));
                    }
                }
            }
            if applicable {
                pass(id, format!("sphere size {sphere} = 0 (mod p^2) for every required p"))
            } else {
                na(id)
            }
        }
        "T16.steiner" => steiner_rule(id, e + 1, 2 * e + 1, &[w, n - w]),
        "T17.steiner" => steiner_rule(id, 2, e + 2, &[w - e + 1, n - w + e - 1]),
        "T22.steiner" => {
            if e * n < (w - 1) * (2 * e + 1) {
                steiner_rule(id, 2, e + 2, &[n - w + 2])
            } else {
                na(id)
            }
        }
        "C23.steiner" => steiner_rule(id, 2, e + 2, &[w + 2]),
        "P49.residues" => {
            if e != 2 || a != 0 {
                return na(id);
            }
            if w < 2 {
                return na(id);
            }
            for leader in [TranslateLeader::Leader1, TranslateLeader::Leader2] {
                for j in 2..=7.min(w) {
                    let m = delta_moments_2perfect(w, j, leader);
                    if !m.is_integer() {
                        return fail(id, format!("moment at j={j} ({leader:?}) is {m}"));
                    }
                }
            }
            pass(id, "all j=2..7 moments integral for both translate leaders".to_string())
        }
        "T50.pell" => {
            if e != 2 || a != 0 {
                return na(id);
            }
            match crate::pell::report_for_weight(&int(w)) {
                None => fail(id, format!("2w^2-6w+5 = {} is not a perfect square", 2 * w * w - 6 * w + 5)),
                Some(rep) => {
                    if !rep.w_residue_pass {
                        fail(id, format!("w={w} is not 2 (mod 12)"))
                    } else if !rep.mod3_pass {
                        fail(id, format!("x=2w-3={} is not 1 (mod 3)", 2 * w - 3))
                    } else if !rep.c2_square && !rep.d2_square {
                        fail(
                            id,
                            format!("neither branch radicand {} / {} is a perfect square", rep.solution.col2, rep.solution.col3),
                        )
                    } else if !rep.w_at_least_5 {
                        fail(id, format!("w={w} < 5"))
                    } else {
                        pass(id, format!("Pell row t={} passes every condition", rep.solution.t))
                    }
                }
            }
        }
        other => unreachable!("unknown rule id {other}"),
    }
}

/// Sphere-size divisibility Phi_e | C(n-i, w-i) for all 0 <= i <= t.
fn divisibility_rule(id: &'static str, c: &Ctx, t: i64) -> RuleVerdict {
    let sphere = c.sphere();
    // prefer Kummer carries on the factorization of the sphere size
    if let Some(factors) = factorize(&sphere, DEFAULT_RHO_BUDGET) {
        let mut small: Vec<(u64, u32)> = Vec::with_capacity(factors.len());
        let mut all_small = true;
        for (p, alpha) in &factors {
            match p.to_u64() {
                Some(p) => small.push((p, *alpha)),
                None => {
                    all_small = false;
                    break;
                }
            }
        }
        if all_small {
            for i in 0..=t {
                for &(p, alpha) in &small {
                    if binom_valuation((c.n - i) as u64, (c.w - i) as u64, p) < alpha {
                        return fail(
                            id,
                            format!(
                                "sphere size {sphere} does not divide C({},{}) (deficient at p={p})",
                                c.n - i,
                                c.w - i
                            ),
                        );
                    }
                }
            }
            return pass(id, format!("sphere size {sphere} divides C(n-i,w-i) for 0 <= i <= {t}"));
        }
    }
    // fall back to direct exact division
    for i in 0..=t {
        let b = binom_i(c.n - i, c.w - i);
        if (&b % &sphere) != ExactInt::zero() {
            return fail(id, format!("sphere size {sphere} does not divide C({},{}) = {b}", c.n - i, c.w - i));
        }
    }
    pass(id, format!("sphere size {sphere} divides C(n-i,w-i) for 0 <= i <= {t}"))
}

/// Necessary conditions for the embedded Steiner systems S(t, k, v) for each
/// listed point count v.
fn steiner_rule(id: &'static str, t: i64, k: i64, vs: &[i64]) -> RuleVerdict {
    for &v in vs {
        if !(0 < t && t <= k && k <= v && v <= u32::MAX as i64) {
            return na(id);
        }
        let report = steiner_conditions(t as u32, k as u32, v as u32);
        if let Some(c) = report.first_failure() {
            let detail = match c {
                SteinerCondition::Divisibility { i, ratio, .. } => {
                    format!("S({t},{k},{v}): ratio at i={i} is {ratio}")
                }
                SteinerCondition::TitsBound { required, .. } => {
                    format!("S({t},{k},{v}): needs v >= {required}")
                }
            };
            return fail(id, detail);
        }
    }
    pass(id, format!("embedded S({t},{k},v) admissible for v in {vs:?}"))
}

fn evaluate(params: JohnsonParams, filter: Option<&[String]>, order: &[&'static str], short_circuit: bool) -> PointReport {
    let (wc, _) = canonical_w(params.n, params.w);
    let canonical = JohnsonParams {
        n: params.n,
        w: wc,
        e: params.e,
    };
    if let Some(family) = classify_trivial(params.n, params.w, params.e) {
        return PointReport {
            params,
            canonical,
            verdicts: Vec::new(),
            conclusion: Conclusion::Trivial(family),
        };
    }
    let c = Ctx {
        n: canonical.n as i64,
        w: canonical.w as i64,
        e: canonical.e as i64,
    };
    let phi = strength_phi(c.n, c.w, c.e);
    let mut verdicts = Vec::new();
    let mut failed: Vec<&'static str> = Vec::new();
    for &id in order {
        if !rule_enabled(filter, id) {
            continue;
        }
        let v = eval_rule(id, &c, phi);
        let is_fail = v.status == Status::Fail;
        verdicts.push(v);
        if is_fail {
            failed.push(id);
            if short_circuit {
                break;
            }
        }
    }
    let conclusion = if failed.is_empty() {
        Conclusion::Survives
    } else {
        Conclusion::Excluded(failed)
    };
    PointReport {
        params,
        canonical,
        verdicts,
        conclusion,
    }
}

/// Evaluates every applicable rule at one point, in canonical catalog order,
/// with no short-circuiting.
pub fn run_rules(n: u64, w: u64, e: u64, rules: Option<&[String]>) -> PointReport {
    assert!(w <= n, "need w <= n");
    evaluate(JohnsonParams { n, w, e }, rules, RULE_IDS, false)
}

/// Fast pure-integer pre-filter used by the range sieve. It re-implements
/// exactly the always-applicable cheap gates (C15, T8, T9, C18, T24 and the
/// e=1 rules L39, T29, EQ1); a `true` result means some rule certainly
/// fails. Equivalence with the full engine is covered by tests.
fn cheap_gates_exclude(n: u64, w: u64, e: u64) -> bool {
    let need = 2 * e + 1;
    if w < need || n - w < need {
        return true;
    }
    let a = n - 2 * w;
    if a == 1 || a == 2 {
        return true;
    }
    if e * n > (w - 1) * (2 * e + 1) {
        return true;
    }
    let m = e + 1;
    if w % m != e % m || (n - w) % m != e % m {
        return true;
    }
    // Theorem 24 parity cases
    let m2 = (e + 1) * (e + 2);
    if e % 2 == 1 {
        if n % 2 != 0 || a % m2 != 0 {
            return true;
        }
    } else if n % 2 == 0 {
        if a % m2 != 0 {
            return true;
        }
    } else if e % 4 != 0 || a % (m2 / 2) != 0 {
        return true;
    }
    if e == 2 && a == 0 {
        // mirrors T50.pell's strength gate: x = 2w-3 must solve the Pell
        // equation, i.e. 2w^2 - 6w + 5 must be a perfect square (w >= 5
        // here, so x >= 7)
        if let Some(r2) = (2 * w)
            .checked_mul(w)
            .and_then(|v| v.checked_sub(6 * w - 5))
        {
            let r = isqrt_u64(r2);
            if r * r != r2 {
                return true;
            }
        }
    }
    if e == 1 {
        if !((w % 12 == 1 && (n - w) % 12 == 1) || (w % 12 == 7 && (n - w) % 12 == 7)) {
            return true;
        }
        let phi1 = 1 + w * (n - w);
        if phi1 % 4 == 0 {
            return true;
        }
        let disc = (a + 1) * (a + 1) + 4 * (w - 1);
        let r = isqrt_u64(disc);
        if r * r != disc || (n - 1 - r) % 2 != 0 || (n - 1 - r) / 2 < 1 {
            return true;
        }
    }
    false
}

/// Runs the rule engine over a rectangle of parameters (w, a = n - 2w),
/// returning the non-excluded points (trivial or surviving) in lexicographic
/// (w, a) order with full canonical-order reports.
pub fn sieve_range(
    e: u64,
    w_min: u64,
    w_max: u64,
    a_min: u64,
    a_max: u64,
    rules: Option<&[String]>,
) -> Vec<PointReport> {
    if w_min > w_max {
        return Vec::new();
    }
    let full_rule_set = rules.is_none();
    (w_min..=w_max)
        .into_par_iter()
        .map(|w| {
            let mut out = Vec::new();
            for a in a_min..=a_max {
                let n = 2 * w + a;
                let params = JohnsonParams { n, w, e };
                if classify_trivial(n, w, e).is_some() {
                    out.push(evaluate(params, rules, RULE_IDS, false));
                    continue;
                }
                // the pre-filter only mirrors always-enabled rules, so it
                // only applies when no rule subset is selected
                if full_rule_set && cheap_gates_exclude(n, w, e) {
                    continue;
                }
                let quick = evaluate(params, rules, FAST_ORDER, true);
                if matches!(quick.conclusion, Conclusion::Excluded(_)) {
                    continue;
                }
                out.push(evaluate(params, rules, RULE_IDS, false));
            }
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

// ---------------------------------------------------------------------------
// Residue tables for 1-perfect codes
// ---------------------------------------------------------------------------

/// Residues used by the two tables: w = n-w = 1 (mod 12) and 7 (mod 12).
pub const TABLE1_RESIDUES: [u64; 5] = [1, 13, 25, 37, 49];
pub const TABLE2_RESIDUES: [u64; 5] = [7, 19, 31, 43, 55];

/// One 5x5 exclusion table over (w mod 60, n-w mod 60) cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueTable {
    pub residues: [u64; 5],
    /// dash[i][j] = true when cell (residues[i], residues[j]) is excluded.
    pub dash: [[bool; 5]; 5],
}

/// A modular refinement condition attached to one surviving cell, in terms
/// of w = 60k + w_residue and n-w = 60y + u_residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub table: u8,
    pub w_residue: u64,
    pub u_residue: u64,
    /// coeff_k*k + coeff_y*y = rhs (mod 5), coefficients as printed.
    pub coeff_k: i64,
    pub coeff_y: i64,
    pub rhs: i64,
    /// Additionally a = 0 (mod 24).
    pub requires_a_mod24: bool,
}

impl Refinement {
    /// Renders the condition, e.g. "2k-y = 4 (mod 5), a = 0 (mod 24)".
    pub fn condition(&self) -> String {
        let k_part = match self.coeff_k {
            0 => String::new(),
            1 => "k".to_string(),
            c => format!("{c}k"),
        };
        let y_part = match self.coeff_y {
            0 => String::new(),
            1 if k_part.is_empty() => "y".to_string(),
            1 => "+y".to_string(),
            -1 => "-y".to_string(),
            c if c > 0 && !k_part.is_empty() => format!("+{c}y"),
            c => format!("{c}y"),
        };
        let mut s = format!("{k_part}{y_part} = {} (mod 5)", self.rhs);
        if self.requires_a_mod24 {
            s.push_str(", a = 0 (mod 24)");
        }
        s
    }
}

/// Output of the residue-table machinery.
#[derive(Clone, Debug)]
pub struct ResidueTables {
    pub table1: ResidueTable,
    pub table2: ResidueTable,
    pub refinements: Vec<Refinement>,
}

fn cell_rep_passes(w: i64, u: i64) -> bool {
    if w < 5 {
        return false;
    }
    crate::moments::table_expressions(w, u - w).all_integral()
}

fn build_table(residues: [u64; 5]) -> ResidueTable {
    let mut dash = [[false; 5]; 5];
    for (i, &w0) in residues.iter().enumerate() {
        for (j, &u0) in residues.iter().enumerate() {
            let mut survives = false;
            'scan: for s in 0..5i64 {
                for t in 0..5i64 {
                    if cell_rep_passes(w0 as i64 + 60 * s, u0 as i64 + 60 * t) {
                        survives = true;
                        break 'scan;
                    }
                }
            }
            dash[i][j] = !survives;
        }
    }
    ResidueTable { residues, dash }
}

const REFINEMENTS: [Refinement; 9] = [
    Refinement { table: 1, w_residue: 13, u_residue: 13, coeff_k: 1, coeff_y: 1, rhs: 3, requires_a_mod24: false },
    Refinement { table: 1, w_residue: 25, u_residue: 1, coeff_k: 0, coeff_y: 1, rhs: 0, requires_a_mod24: false },
    // the source prints rhs 2 here; the exhaustive scan forces 4
    Refinement { table: 1, w_residue: 25, u_residue: 37, coeff_k: 2, coeff_y: -1, rhs: 4, requires_a_mod24: false },
    Refinement { table: 1, w_residue: 37, u_residue: 25, coeff_k: 4, coeff_y: -3, rhs: 4, requires_a_mod24: false },
    Refinement { table: 2, w_residue: 7, u_residue: 55, coeff_k: 4, coeff_y: -3, rhs: 0, requires_a_mod24: true },
    Refinement { table: 2, w_residue: 31, u_residue: 55, coeff_k: 1, coeff_y: 0, rhs: 2, requires_a_mod24: true },
    Refinement { table: 2, w_residue: 43, u_residue: 43, coeff_k: 1, coeff_y: 1, rhs: 2, requires_a_mod24: true },
    Refinement { table: 2, w_residue: 55, u_residue: 7, coeff_k: 2, coeff_y: -1, rhs: 0, requires_a_mod24: true },
    Refinement { table: 2, w_residue: 55, u_residue: 31, coeff_k: 0, coeff_y: 1, rhs: 2, requires_a_mod24: true },
];

/// Verifies one refinement against an exhaustive modulus-1800 scan of its
/// cell: the set of passing (k mod 5, y mod 5, a mod 24) triples must equal
/// the set the condition predicts.
fn verify_refinement(r: &Refinement) -> bool {
    let (w0, u0) = (r.w_residue as i64, r.u_residue as i64);
    let mut observed = std::collections::BTreeSet::new();
    for k in 0..30i64 {
        for y in 0..30i64 {
            let (w, u) = (w0 + 60 * k, u0 + 60 * y);
            if w < 5 {
                continue;
            }
            if cell_rep_passes(w, u) {
                observed.insert((k % 5, y % 5, (u - w).rem_euclid(24)));
            }
        }
    }
    let base_a = (u0 - w0).rem_euclid(24);
    let allowed_a: Vec<i64> = if r.requires_a_mod24 {
        vec![0]
    } else {
        let mut v = vec![base_a, (base_a + 12) % 24];
        v.sort_unstable();
        v.dedup();
        v
    };
    let mut predicted = std::collections::BTreeSet::new();
    for k in 0..5i64 {
        for y in 0..5i64 {
            if (r.coeff_k * k + r.coeff_y * y).rem_euclid(5) == r.rhs.rem_euclid(5) {
                for &a24 in &allowed_a {
                    predicted.insert((k, y, a24));
                }
            }
        }
    }
    observed == predicted
}

/// Builds both residue tables by exhaustive mod-300 scans and returns the
/// nine verified refinement conditions for surviving cells.
///
/// Panics if any refinement fails its own exhaustive re-derivation (that
/// would mean the table machinery is inconsistent — a build failure).
pub fn residue_tables_1perfect() -> ResidueTables {
    let table1 = build_table(TABLE1_RESIDUES);
    let table2 = build_table(TABLE2_RESIDUES);
    for r in &REFINEMENTS {
        let table = if r.table == 1 { &table1 } else { &table2 };
        let i = table.residues.iter().position(|&x| x == r.w_residue).unwrap();
        let j = table.residues.iter().position(|&x| x == r.u_residue).unwrap();
        assert!(!table.dash[i][j], "refinement on an excluded cell ({}, {})", r.w_residue, r.u_residue);
        assert!(
            verify_refinement(r),
            "refinement for cell ({}, {}) contradicts the exhaustive scan",
            r.w_residue,
            r.u_residue
        );
    }
    ResidueTables {
        table1,
        table2,
        refinements: REFINEMENTS.to_vec(),
    }
}

// ---------------------------------------------------------------------------
// Residue classes for 2-perfect codes in J(2w,w)
// ---------------------------------------------------------------------------

/// Least common multiple of the j = 2..7 moment denominators; integrality
/// is periodic in w with this period, so one full period decides a class.
pub const TWO_PERFECT_SCAN_MODULUS: u64 = 3_175_200;

/// The residue classes (mod 60) the earlier configuration-distribution
/// results leave open for 2-perfect codes in J(2w,w).
pub const TWO_PERFECT_PRIOR_MOD60: [u64; 3] = [2, 26, 50];

fn two_perfect_moments_integral(w: i64) -> bool {
    for leader in [TranslateLeader::Leader1, TranslateLeader::Leader2] {
        for j in 2..=7.min(w) {
            if !delta_moments_2perfect(w, j, leader).is_integer() {
                return false;
            }
        }
    }
    true
}

fn class_survives(residue: u64, modulus: u64) -> bool {
    let mut w = residue.max(2);
    // align to the residue class
    while w % modulus != residue % modulus {
        w += 1;
    }
    while w <= TWO_PERFECT_SCAN_MODULUS + residue {
        if two_perfect_moments_integral(w as i64) {
            return true;
        }
        w += modulus;
    }
    false
}

/// Surviving residue classes for 2-perfect codes in J(2w,w).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueClasses {
    pub mod60: Vec<u64>,
    pub mod420: Vec<u64>,
}

/// Derives the surviving residue classes by exact moment integrality over
/// one full denominator period, first mod 60 (within the previously known
/// classes) and then mod 420.
pub fn residue_classes_2perfect() -> ResidueClasses {
    let mod60: Vec<u64> = TWO_PERFECT_PRIOR_MOD60
        .iter()
        .copied()
        .filter(|&c| class_survives(c, 60))
        .collect();
    let mut mod420: Vec<u64> = Vec::new();
    for &c in &mod60 {
        for k in 0..7 {
            let c420 = c + 60 * k;
            if class_survives(c420, 420) {
                mod420.push(c420);
            }
        }
    }
    mod420.sort_unstable();
    ResidueClasses { mod60, mod420 }
}

// ---------------------------------------------------------------------------
// Doubly-constant-weight checks
// ---------------------------------------------------------------------------

/// The full rule-engine output for one doubly point.
#[derive(Clone, Debug)]
pub struct DoublyReport {
    pub params: DoublyParams,
    pub verdicts: Vec<RuleVerdict>,
    pub conclusion: Conclusion,
}

/// Rule catalog for doubly-constant-weight points.
pub const DOUBLY_RULE_IDS: &[&str] = &["EQ9.div", "T60.n1", "T60.n2", "C58.bounds"];

/// Applies the doubly-constant-weight necessary conditions pointwise.
pub fn doubly_checks(p: &DoublyParams) -> DoublyReport {
    assert!(p.w1 <= p.n1 && p.w2 <= p.n2);
    if let Some(family) = classify_trivial_doubly(p) {
        return DoublyReport {
            params: *p,
            verdicts: Vec::new(),
            conclusion: Conclusion::Trivial(family),
        };
    }
    let (w1, n1, w2, n2, e) = (p.w1 as i64, p.n1 as i64, p.w2 as i64, p.n2 as i64, p.e as i64);
    let mut verdicts = Vec::new();
    let mut failed = Vec::new();

    let sphere = sphere_size_doubly(p.n1, p.w1, p.n2, p.w2, p.e);
    let space = binom_i(n1, w1) * binom_i(n2, w2);
    if (&space % &sphere) == ExactInt::zero() {
        verdicts.push(pass("EQ9.div", format!("{sphere} divides {space}, quotient {}", &space / &sphere)));
    } else {
        failed.push("EQ9.div");
        verdicts.push(fail("EQ9.div", format!("sphere size {sphere} does not divide {space}")));
    }

    for (id, lhs, bound) in [
        ("T60.n1", n1, (2 * e + 1) * (w1 - 1) + w2),
        ("T60.n2", n2, (2 * e + 1) * (w2 - 1) + w1),
    ] {
        if e * lhs <= bound {
            verdicts.push(pass(id, format!("{e}*{lhs} <= {bound}")));
        } else {
            failed.push(id);
            verdicts.push(fail(id, format!("{e}*{lhs} = {} > {bound}", e * lhs)));
        }
    }

    let need = 2 * e + 1;
    let sums = [
        ("w1+w2", w1 + w2),
        ("n1+n2-w1-w2", n1 + n2 - w1 - w2),
        ("n1-w1+w2", n1 - w1 + w2),
        ("w1+n2-w2", w1 + n2 - w2),
    ];
    match sums.iter().find(|(_, v)| *v < need) {
        None => verdicts.push(pass("C58.bounds", format!("all four sums >= {need}"))),
        Some((name, v)) => {
            failed.push("C58.bounds");
            verdicts.push(fail("C58.bounds", format!("{name} = {v} < {need}")));
        }
    }

    DoublyReport {
        params: *p,
        verdicts,
        conclusion: if failed.is_empty() {
            Conclusion::Survives
        } else {
            Conclusion::Excluded(failed)
        },
    }
}

/// The k-th member of the family whose sphere size divides the space size:
/// w1 = w2 = 2k, n1 = 4k+1, n2 = 4k+2, e = 1. Returns the parameters and
/// the exact quotient space/sphere; panics if the divisibility ever failed.
pub fn catalan_family(k: u64) -> (DoublyParams, ExactInt) {
    assert!(k >= 1);
    let p = DoublyParams {
        w1: 2 * k,
        n1: 4 * k + 1,
        w2: 2 * k,
        n2: 4 * k + 2,
        e: 1,
    };
    let sphere = sphere_size_doubly(p.n1, p.w1, p.n2, p.w2, 1);
    assert_eq!(sphere, int(((2 * k + 1) * (4 * k + 1)) as i64));
    let space = binom_i(p.n1 as i64, p.w1 as i64) * binom_i(p.n2 as i64, p.w2 as i64);
    let (q, r) = space.div_rem(&sphere);
    assert!(r.is_zero(), "family divisibility failed at k={k}");
    (p, q)
}
