//! Step-by-step re-execution of the finite deductions for `x² + xy + y²`
//! (values up to 28) and `x² − xy + y²` (the three-case split and the `f_2` pattern).
//!
//! Steps are data: each names a target argument, the relations it uses, and the
//! auxiliary unknowns to eliminate in order. A small evaluator turns relations
//! into polynomial equations, eliminates, and insists on a unique rational root.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::{rational, rational_roots, resultant_eliminate, univariate_gcd, Polynomial, Rational, Sym};
use crate::forms::BinaryQuadraticForm;
use crate::multfn::factorize;

/// Unknown value `f(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Arg(u64);

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f({})", self.0)
    }
}

type Poly = Polynomial<Arg>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Relation {
    /// `f(1) = 1` for a multiplicative function that is not identically zero.
    Unit,
    /// `f(n) = Q(f(x), f(y))` where `n = Q(x, y)`.
    Rep { n: u64, x: u64, y: u64 },
    /// `Q(f(x₁), f(y₁)) = Q(f(x₂), f(y₂))` where `Q(x₁, y₁) = Q(x₂, y₂)`.
    SameValue { left: (u64, u64), right: (u64, u64) },
}

impl Relation {
    /// Whether the arithmetic behind the relation holds for `form`.
    pub fn holds_for(&self, form: &BinaryQuadraticForm) -> bool {
        let q = |x: u64, y: u64| form.evaluate(&BigInt::from(x), &BigInt::from(y));
        match *self {
            Relation::Unit => true,
            Relation::Rep { n, x, y } => q(x, y) == BigInt::from(n),
            Relation::SameValue { left, right } => q(left.0, left.1) == q(right.0, right.1),
        }
    }

    fn arguments(&self) -> Vec<u64> {
        match *self {
            Relation::Unit => vec![1],
            Relation::Rep { n, x, y } => vec![n, x, y],
            Relation::SameValue { left, right } => vec![left.0, left.1, right.0, right.1],
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Unit => write!(f, "f(1) = 1"),
            Relation::Rep { n, x, y } => write!(f, "{n} = Q({x},{y})"),
            Relation::SameValue { left, right } => {
                write!(f, "Q({},{}) = Q({},{})", left.0, left.1, right.0, right.1)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Forced,
    Cases,
}

#[derive(Debug, Clone)]
struct Step {
    target: u64,
    expected: Option<i64>,
    citation: &'static str,
    relations: Cow<'static, [Relation]>,
    eliminate: &'static [u64],
    mode: Mode,
}

const fn rep(n: u64, x: u64, y: u64) -> Relation {
    Relation::Rep { n, x, y }
}

const fn forced(target: u64, expected: i64, citation: &'static str, relations: &'static [Relation]) -> Step {
    Step { target, expected: Some(expected), citation, relations: Cow::Borrowed(relations), eliminate: &[], mode: Mode::Forced }
}

const THEOREM1: &[Step] = &[
    forced(1, 1, "multiplicative and not identically zero", &[Relation::Unit]),
    forced(3, 3, "x = y = 1", &[rep(3, 1, 1)]),
    forced(13, 13, "13 = 1 + 3 + 9", &[rep(13, 1, 3)]),
    Step {
        target: 2,
        expected: Some(2),
        citation: "system f(7), f(13), f(21), f(39), f(91) with f(4) = f(2)^2",
        relations: Cow::Borrowed(&[rep(12, 2, 2), rep(7, 1, 2), rep(21, 1, 4), rep(39, 2, 5), rep(91, 5, 6)]),
        eliminate: &[4, 7, 5],
        mode: Mode::Forced,
    },
    forced(4, 4, "square law f(3n^2) = 3 f(n)^2, n = 2", &[rep(12, 2, 2)]),
    forced(16, 16, "square law, n = 4", &[rep(48, 4, 4)]),
    forced(7, 7, "7 = 1 + 2 + 4", &[rep(7, 1, 2)]),
    forced(5, 5, "f(39) and f(91) together", &[rep(39, 2, 5), rep(91, 5, 6)]),
    forced(25, 25, "square law, n = 5", &[rep(75, 5, 5)]),
    forced(43, 43, "43 = 1 + 6 + 36", &[rep(43, 1, 6)]),
    forced(8, 8, "f(84) and f(129) with f(43) = 43", &[rep(84, 2, 8), rep(129, 5, 8)]),
    forced(9, 9, "63 = 7 * 3^2", &[rep(63, 3, 6)]),
    forced(19, 19, "19 = 4 + 6 + 9", &[rep(19, 2, 3)]),
    forced(11, 11, "f(133) and f(247)", &[rep(133, 1, 11), rep(247, 7, 11)]),
    forced(
        17,
        17,
        "f(399) and 427 = Q(3,19) = Q(6,17)",
        &[rep(399, 5, 17), Relation::SameValue { left: (3, 19), right: (6, 17) }],
    ),
    forced(79, 79, "79 = 9 + 21 + 49", &[rep(79, 3, 7)]),
    forced(193, 193, "193 = 49 + 63 + 81", &[rep(193, 7, 9)]),
    forced(23, 23, "553 = 7 * 79 and 579 = 3 * 193", &[rep(553, 1, 23), rep(579, 2, 23)]),
    forced(27, 27, "square law, n = 3", &[rep(27, 3, 3)]),
];

const THEOREM2_SPLIT: Step = Step {
    target: 2,
    expected: None,
    citation: "f(3) = Q(f(1), f(2)) and f(7) = Q(f(1), f(3)) = Q(f(2), f(3))",
    relations: Cow::Borrowed(&[rep(3, 1, 2), rep(7, 1, 3), rep(7, 2, 3)]),
    eliminate: &[7, 3],
    mode: Mode::Cases,
};

const THEOREM2_CASE: &[Step] = &[
    Step { target: 3, expected: None, citation: "3 = Q(1,2)", relations: Cow::Borrowed(&[rep(3, 1, 2)]), eliminate: &[], mode: Mode::Forced },
    Step { target: 4, expected: None, citation: "4 = Q(2,2)", relations: Cow::Borrowed(&[rep(4, 2, 2)]), eliminate: &[], mode: Mode::Forced },
    Step {
        target: 7,
        expected: None,
        citation: "7 = Q(1,3) = Q(2,3)",
        relations: Cow::Borrowed(&[rep(7, 1, 3), rep(7, 2, 3)]),
        eliminate: &[],
        mode: Mode::Forced,
    },
];

/// One executed step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub target: u64,
    pub citation: String,
    pub relations: Vec<Relation>,
    /// Previously established values the relations depend on.
    pub inputs: Vec<(u64, String)>,
    /// Every rational root of the final univariate condition.
    pub roots: Vec<String>,
    pub value: String,
}

/// Known values of `f`, keyed by argument.
#[derive(Debug, Clone)]
struct Evaluator {
    form: BinaryQuadraticForm,
    known: BTreeMap<u64, Rational>,
}

impl Evaluator {
    fn new(form: BinaryQuadraticForm) -> Self {
        Evaluator { form, known: BTreeMap::new() }
    }

    /// Value of `f(n)` by multiplicativity from known prime powers, if determined.
    fn value(&self, n: u64) -> Option<Rational> {
        if let Some(v) = self.known.get(&n) {
            return Some(v.clone());
        }
        if n == 1 {
            return None;
        }
        let mut acc = Rational::one();
        for (p, e) in factorize(n) {
            acc *= self.known.get(&p.pow(e))?;
        }
        Some(acc)
    }

    /// `f(n)` as a polynomial; unknown prime-power factors become variables.
    fn term(&self, n: u64, target: u64) -> Poly {
        if n == target {
            return Poly::var(Arg(n));
        }
        if let Some(v) = self.value(n) {
            return Poly::constant(v);
        }
        if n == 1 {
            return Poly::var(Arg(1));
        }
        let mut acc = Poly::one();
        for (p, e) in factorize(n) {
            let pp = p.pow(e);
            acc = &acc
                * &match self.known.get(&pp) {
                    Some(v) => Poly::constant(v.clone()),
                    None => Poly::var(Arg(pp)),
                };
        }
        acc
    }

    fn q(&self, x: &Poly, y: &Poly) -> Poly {
        self.form.apply(x, y)
    }

    fn equation(&self, relation: &Relation, target: u64) -> Poly {
        let f = |n| self.term(n, target);
        match *relation {
            Relation::Unit => &f(1) - &Poly::one(),
            Relation::Rep { n, x, y } => &f(n) - &self.q(&f(x), &f(y)),
            Relation::SameValue { left, right } => {
                &self.q(&f(left.0), &f(left.1)) - &self.q(&f(right.0), &f(right.1))
            }
        }
    }

    fn run(&mut self, step: &Step) -> Result<(StepRecord, Vec<Rational>)> {
        let name = format!("f({})", step.target);
        let fail = |reason: String| Error::Replay { step: name.clone(), reason: format!("{reason} [{}]", step.citation) };
        for rel in step.relations.iter() {
            if !rel.holds_for(&self.form) {
                return Err(fail(format!("{rel} does not hold")));
            }
        }
        let mut inputs: Vec<(u64, String)> = step
            .relations
            .iter()
            .flat_map(Relation::arguments)
            .filter(|&n| n != step.target)
            .filter_map(|n| self.value(n).map(|v| (n, v.to_string())))
            .collect();
        inputs.sort();
        inputs.dedup();

        let mut equations: Vec<Poly> = step.relations.iter().map(|r| self.equation(r, step.target)).collect();
        for &aux in step.eliminate {
            equations = eliminate(equations, Arg(aux)).map_err(|e| fail(format!("eliminating f({aux}): {e}")))?;
        }
        let target = Arg(step.target);
        let mut condition: Option<Poly> = None;
        for eq in equations.into_iter().filter(|e| !e.is_zero()) {
            if eq.variables().iter().any(|v| *v != target) {
                return Err(fail(format!("equation {eq} = 0 is not univariate in {target}")));
            }
            if eq.is_constant() {
                return Err(fail(format!("contradiction {eq} = 0")));
            }
            condition = Some(match condition {
                None => eq,
                Some(c) => univariate_gcd(&c, &eq).map_err(|e| fail(e.to_string()))?,
            });
        }
        let condition = condition.ok_or_else(|| fail("no condition on the target".into()))?;
        let roots = if condition.is_constant() { Vec::new() } else { rational_roots(&condition).map_err(|e| fail(e.to_string()))? };
        let value = match (step.mode, roots.as_slice()) {
            (Mode::Forced, [v]) => v.clone(),
            (Mode::Forced, _) => {
                let list: Vec<String> = roots.iter().map(ToString::to_string).collect();
                return Err(fail(format!("not forced: rational roots [{}] of {condition}", list.join(", "))));
            }
            (Mode::Cases, []) => return Err(fail(format!("no rational root of {condition}"))),
            (Mode::Cases, _) => roots[0].clone(),
        };
        if let Some(expected) = step.expected {
            if value != rational(expected) {
                return Err(fail(format!("derived {value}, expected {expected}")));
            }
        }
        if step.mode == Mode::Forced {
            self.set(step.target, value.clone()).map_err(fail)?;
        }
        let record = StepRecord {
            target: step.target,
            citation: step.citation.into(),
            relations: step.relations.to_vec(),
            inputs,
            roots: roots.iter().map(ToString::to_string).collect(),
            value: value.to_string(),
        };
        Ok((record, roots))
    }

    /// Records `f(n) = value`, checking agreement with multiplicativity.
    fn set(&mut self, n: u64, value: Rational) -> std::result::Result<(), String> {
        if let Some(existing) = self.value(n) {
            if existing != value {
                return Err(format!("f({n}) = {value} contradicts multiplicative value {existing}"));
            }
        }
        self.known.insert(n, value);
        Ok(())
    }
}

/// Removes `var` from the system: by definition when some equation is linear in it
/// with a constant coefficient, otherwise by the resultant of the first two
/// equations containing it.
fn eliminate(mut equations: Vec<Poly>, var: Arg) -> Result<Vec<Poly>> {
    let definition = equations.iter().position(|e| {
        e.degree_in(&var) == 1 && e.coefficients_in(&var)[1].is_constant()
    });
    if let Some(i) = definition {
        let eq = equations.remove(i);
        let c = eq.coefficients_in(&var);
        let inv = Rational::one() / c[1].constant_value().expect("constant coefficient");
        let value = (-&c[0]).scale(&inv);
        return Ok(equations.iter().map(|e| e.substitute(&var, &value)).collect());
    }
    let holders: Vec<usize> = equations.iter().enumerate().filter(|(_, e)| e.degree_in(&var) > 0).map(|(i, _)| i).collect();
    match holders.as_slice() {
        [] => Ok(equations),
        [_] => Err(Error::MissingVariable),
        [i, j, ..] => {
            let res = resultant_eliminate(&equations[*i], &equations[*j], &var)?;
            let (i, j) = (*i, *j);
            equations.remove(j);
            equations[i] = res;
            Ok(equations)
        }
    }
}

/// Outcome of the first replay: the executed steps and the final table `f(1..=28)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem1Replay {
    pub steps: Vec<StepRecord>,
    pub values: Vec<(u64, String)>,
}

pub const THEOREM1_RANGE: u64 = 28;

/// Runs the bootstrap for `x² + xy + y²` and asserts `f(n) = n` for `1 ≤ n ≤ 28`.
pub fn replay_theorem1() -> Result<Theorem1Replay> {
    let mut ev = Evaluator::new(BinaryQuadraticForm::plus());
    let mut steps = Vec::new();
    for step in THEOREM1 {
        steps.push(ev.run(step)?.0);
    }
    let mut values = Vec::new();
    for n in 1..=THEOREM1_RANGE {
        let v = ev.value(n).ok_or_else(|| Error::Replay { step: "final table".into(), reason: format!("f({n}) undetermined") })?;
        if v != rational(n as i64) {
            return Err(Error::Replay { step: "final table".into(), reason: format!("f({n}) = {v}") });
        }
        values.push((n, v.to_string()));
    }
    Ok(Theorem1Replay { steps, values })
}

/// One row of the three-case table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseRow {
    #[serde(serialize_with = "display")]
    pub f2: Rational,
    #[serde(serialize_with = "display")]
    pub f3: Rational,
    #[serde(serialize_with = "display")]
    pub f4: Rational,
    #[serde(serialize_with = "display")]
    pub f6: Rational,
    #[serde(serialize_with = "display")]
    pub f7: Rational,
}

fn display<S: Serializer>(value: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(value)
}

impl CaseRow {
    pub fn as_ints(&self) -> Option<[i64; 5]> {
        use num_traits::ToPrimitive;
        let i = |r: &Rational| r.is_integer().then(|| r.to_integer().to_i64()).flatten();
        Some([i(&self.f2)?, i(&self.f3)?, i(&self.f4)?, i(&self.f6)?, i(&self.f7)?])
    }
}

/// Outcome of the second replay.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem2Replay {
    pub split: StepRecord,
    pub cases: Vec<CaseRow>,
    /// Polynomial identities the pattern derivations rest on.
    pub identities: Vec<String>,
    /// `f(1..=bound)` in the case `f(2) = 0`.
    pub f2_pattern: Vec<(u64, String)>,
    /// `f(1..=bound)` in the case `f(2) = 2`, continued by `f(n) = f(n − 1) + 1`.
    pub identity_chain: Vec<(u64, String)>,
    pub pattern_steps: Vec<StepRecord>,
}

pub const THEOREM2_BOUND: u64 = 100;

fn check_polynomial_identities() -> Result<Vec<String>> {
    let k = Polynomial::var(Sym("k"));
    let n = Polynomial::var(Sym("n"));
    let (a, b) = (Polynomial::var(Sym("a")), Polynomial::var(Sym("b")));
    let c = |v: i64| Polynomial::<Sym>::from_int(v);
    let q = BinaryQuadraticForm::minus();
    let one_k = &(&c(1) - &k) + &k.pow(2);
    let claims = [
        ("Q(2, 2k) = 4(1 - k + k^2)", q.apply(&c(2), &(&c(2) * &k)), &c(4) * &one_k),
        ("Q(n - 1, n) = Q(1, n)", q.apply(&(&n - &c(1)), &n), q.apply(&c(1), &n)),
        (
            "Q(a, b) - Q(1, b) = (a - b + 1)(a - 1)",
            &q.apply(&a, &b) - &q.apply(&c(1), &b),
            &(&(&a - &b) + &c(1)) * &(&a - &c(1)),
        ),
    ];
    let mut out = Vec::new();
    for (name, lhs, rhs) in claims {
        if lhs != rhs {
            return Err(Error::Replay { step: name.into(), reason: format!("{lhs} != {rhs}") });
        }
        out.push(name.to_string());
    }
    Ok(out)
}

fn table(ev: &Evaluator, bound: u64) -> Result<Vec<(u64, String)>> {
    (1..=bound)
        .map(|n| {
            ev.value(n)
                .map(|v| (n, v.to_string()))
                .ok_or_else(|| Error::Replay { step: format!("f({n})"), reason: "undetermined".into() })
        })
        .collect()
}

/// Runs the three-case split for `x² − xy + y²` and the `f(2) ∈ {0, 2}` continuations
/// for all arguments up to 100.
pub fn replay_theorem2_cases() -> Result<Theorem2Replay> {
    let identities = check_polynomial_identities()?;
    let mut base = Evaluator::new(BinaryQuadraticForm::minus());
    base.run(&THEOREM1[0])?;
    let (split, roots) = base.run(&THEOREM2_SPLIT)?;

    let mut cases = Vec::new();
    let mut by_f2 = BTreeMap::new();
    for root in roots {
        let mut ev = base.clone();
        ev.set(2, root.clone()).map_err(|reason| Error::Replay { step: "f(2)".into(), reason })?;
        for step in THEOREM2_CASE {
            ev.run(step)?;
        }
        let get = |n| ev.value(n).expect("case values determined");
        cases.push(CaseRow { f2: get(2), f3: get(3), f4: get(4), f6: get(6), f7: get(7) });
        by_f2.insert(root, ev);
    }
    let expected = [[0, 1, 0, 0, 1], [1, 1, 1, 1, 1], [2, 3, 4, 6, 7]];
    let got: Vec<_> = cases.iter().map(CaseRow::as_ints).collect();
    if got != expected.iter().map(|r| Some(*r)).collect::<Vec<_>>() {
        return Err(Error::Replay { step: "three cases".into(), reason: format!("got {got:?}") });
    }

    let mut pattern_steps = Vec::new();
    let mut zero = by_f2.remove(&Rational::zero()).expect("case f(2) = 0");
    for k in 1..=THEOREM2_BOUND / 2 {
        let even = Step {
            target: 2 * k,
            expected: Some(0),
            citation: "Q(2, 2k) = 4(1 - k + k^2) with 1 - k + k^2 odd",
            relations: Cow::Owned(vec![rep(4 * (k * k - k + 1), 2, 2 * k)]),
            eliminate: &[],
            mode: Mode::Forced,
        };
        pattern_steps.push(zero.run(&even)?.0);
        if 2 * k < THEOREM2_BOUND {
            pattern_steps.push(zero.run(&successor_step(2 * k + 1, Some(1)))?.0);
        }
    }
    let f2_pattern = table(&zero, THEOREM2_BOUND)?;
    for (n, v) in &f2_pattern {
        let want = if n % 2 == 0 { "0" } else { "1" };
        if v != want {
            return Err(Error::Replay { step: format!("f({n})"), reason: format!("pattern gives {v}") });
        }
    }

    let mut chain = by_f2.remove(&rational(2)).expect("case f(2) = 2");
    for n in 3..=THEOREM2_BOUND {
        chain.run(&successor_step(n, Some(n as i64)))?;
    }
    let identity_chain = table(&chain, THEOREM2_BOUND)?;

    Ok(Theorem2Replay { split, cases, identities, f2_pattern, identity_chain, pattern_steps })
}

/// `f(1 − n + n²)` computed two ways: `f(n−1) = 1` or `f(n) = f(n−1) + 1`.
fn successor_step(n: u64, expected: Option<i64>) -> Step {
    Step {
        target: n,
        expected,
        citation: "Q(1, n) = Q(n - 1, n): f(n - 1) = 1 or f(n) = f(n - 1) + 1",
        relations: Cow::Owned(vec![Relation::SameValue { left: (1, n), right: (n - 1, n) }]),
        eliminate: &[],
        mode: Mode::Forced,
    }
}
