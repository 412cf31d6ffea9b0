//! Deduction engine: turns the representation table of a form into polynomial
//! constraints on prime-power values, propagates them to a fixpoint and
//! branches on rational roots, collecting every terminal branch.

mod propagate;
mod report;

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;

pub use report::{LeafStatus, LeafSummary, LeafValue, SearchReport};

use crate::error::{Error, Result};
use crate::exactalg::Polynomial;
use crate::families::Family;
use crate::forms::{BinaryQuadraticForm, Representation, RepresentationTable};
use crate::multfn::{PartialMultiplicativeFunction, PrimePower, Sieve, ValueState};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub degree_cap: u32,
    pub variable_cap: usize,
    pub max_depth: usize,
    pub max_branches: usize,
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            degree_cap: 16,
            variable_cap: 3,
            max_depth: 64,
            max_branches: 10_000,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintStatus {
    Active,
    Satisfied,
    Deferred,
}

/// `f(n) − Q(f(x), f(y)) = 0` for a representation `n = Q(x, y)`, possibly
/// rewritten by propagation. Derived constraints keep the origin of a parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub origin: Representation,
    pub polynomial: Polynomial<PrimePower>,
    pub status: ConstraintStatus,
    pub derived: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchStatus {
    Open,
    Consistent,
    Contradiction,
    Stuck,
}

/// One node of the search tree.
#[derive(Debug, Clone)]
pub struct Branch {
    /// Child indices from the root; orders the report.
    pub path: Vec<usize>,
    pub labels: Vec<String>,
    pub fn_state: PartialMultiplicativeFunction,
    pub constraints: Vec<Constraint>,
    /// Eliminated variables `v = expr` with `expr` free of other bound variables.
    pub bindings: Vec<(PrimePower, Polynomial<PrimePower>)>,
    pub status: BranchStatus,
    pub reason: Option<String>,
    tried: BTreeSet<(Polynomial<PrimePower>, Polynomial<PrimePower>)>,
}

impl Branch {
    pub fn root(fn_state: PartialMultiplicativeFunction, constraints: Vec<Constraint>) -> Self {
        Branch {
            path: Vec::new(),
            labels: Vec::new(),
            fn_state,
            constraints,
            bindings: Vec::new(),
            status: BranchStatus::Open,
            reason: None,
            tried: BTreeSet::new(),
        }
    }

    pub fn id(&self) -> String {
        if self.labels.is_empty() {
            "root".to_string()
        } else {
            self.labels.join("/")
        }
    }

    pub fn depth(&self) -> usize {
        self.path.len()
    }

    /// Settles the status of a propagated branch, or picks a constraint to branch on.
    fn classify(&mut self) -> Option<usize> {
        if self.status != BranchStatus::Open {
            return None;
        }
        if self.constraints.is_empty() {
            self.status = BranchStatus::Consistent;
            return None;
        }
        match self.branching_candidate() {
            Some(i) => Some(i),
            None => {
                self.status = BranchStatus::Stuck;
                self.reason = Some("no rule applies to the remaining constraints".to_string());
                None
            }
        }
    }
}

/// One constraint per representation `n = Q(x, y)` with `n` in the table,
/// deduplicated by normalized polynomial.
pub fn compile_constraints(
    table: &RepresentationTable,
    fn_state: &PartialMultiplicativeFunction,
    config: &SearchConfig,
) -> Result<Vec<Constraint>> {
    let form = table.form();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (n, reps) in table.iter() {
        if n > fn_state.limit() {
            break;
        }
        for rep in reps {
            let lhs = fn_state.value_at(n)?;
            let fx = fn_state.value_at(rep.x)?;
            let fy = fn_state.value_at(rep.y)?;
            let poly = propagate::normalize(&(&lhs - &form.apply(&fx, &fy)));
            if !seen.insert(poly.clone()) {
                continue;
            }
            let mut c = Constraint {
                origin: *rep,
                polynomial: poly,
                status: ConstraintStatus::Active,
                derived: false,
            };
            c.refresh_status(config);
            out.push(c);
        }
    }
    Ok(out)
}

/// Prime powers occurring in at least one compiled constraint (f(1) = 1 only), ascending.
pub fn constrained_variables(form: &BinaryQuadraticForm, limit: u64) -> Result<Vec<PrimePower>> {
    let fn_state = PartialMultiplicativeFunction::new(limit);
    let table = form.representation_table(limit)?;
    let constraints = compile_constraints(&table, &fn_state, &SearchConfig::default())?;
    let mut vars: Vec<PrimePower> = constraints
        .iter()
        .flat_map(|c| c.polynomial.variables())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    vars.sort_by_key(PrimePower::value);
    Ok(vars)
}

/// `true` iff every determined value in the leaf agrees with `family`.
pub fn match_leaf(fn_state: &PartialMultiplicativeFunction, family: &Family) -> bool {
    fn_state.entries().all(|(pp, state)| match state {
        ValueState::Determined(v) => *v == family.value(pp.value()),
        ValueState::Variable(_) => true,
    })
}

/// Families checked against every consistent leaf: identity, constant 1 and
/// the prime indicators for primes up to the limit.
pub fn candidate_families(sieve: &Sieve) -> Vec<Family> {
    let mut out = vec![Family::Identity, Family::ConstantOne];
    out.extend(sieve.primes().map(Family::PrimeIndicator));
    out
}

/// Classification of all multiplicative functions on `1..=limit`
/// compatible with `form`. Each level of the tree is processed as a batch so
/// the outcome does not depend on the thread count.
pub fn search(form: &BinaryQuadraticForm, limit: u64, config: &SearchConfig) -> Result<SearchReport> {
    if !form.is_positive_definite() {
        return Err(Error::NotPositiveDefinite(form.to_string()));
    }
    if limit < 3 {
        return Err(Error::NonPositive(format!("limit {limit} (need at least 3)")));
    }
    let sieve = Arc::new(Sieve::new(limit));
    let fn_state = PartialMultiplicativeFunction::with_sieve(sieve.clone());
    let table = form.representation_table(limit)?;
    let constraints = compile_constraints(&table, &fn_state, config)?;

    let run = || explore(Branch::root(fn_state, constraints), config);
    let outcome = if config.threads > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .expect("thread pool")
            .install(run)
    } else {
        run()
    };

    let families = candidate_families(&sieve);
    let mut leaves = outcome.leaves;
    leaves.sort_by(|a, b| a.path.cmp(&b.path));
    Ok(SearchReport {
        form: form.clone(),
        limit,
        incomplete: outcome.incomplete,
        leaves: leaves.iter().map(|b| LeafSummary::from_branch(b, &families)).collect(),
        contradictions: outcome.contradictions,
    })
}

struct Outcome {
    leaves: Vec<Branch>,
    contradictions: usize,
    incomplete: bool,
}

fn explore(root: Branch, config: &SearchConfig) -> Outcome {
    let mut frontier = vec![root];
    let mut created = 1usize;
    let mut outcome = Outcome {
        leaves: Vec::new(),
        contradictions: 0,
        incomplete: false,
    };
    while !frontier.is_empty() {
        let expanded: Vec<(Branch, Vec<Branch>)> = if config.threads > 1 {
            frontier.into_par_iter().map(|b| expand(b, config)).collect()
        } else {
            frontier.into_iter().map(|b| expand(b, config)).collect()
        };
        let mut next = Vec::new();
        for (branch, children) in expanded {
            match branch.status {
                BranchStatus::Contradiction => outcome.contradictions += 1,
                BranchStatus::Consistent | BranchStatus::Stuck => outcome.leaves.push(branch),
                BranchStatus::Open => {
                    if branch.depth() >= config.max_depth || created + children.len() > config.max_branches {
                        outcome.incomplete = true;
                        continue;
                    }
                    created += children.len();
                    for child in children {
                        match child.status {
                            BranchStatus::Stuck => outcome.leaves.push(child),
                            _ => next.push(child),
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    outcome
}

/// Propagates one branch and, if it stays open, returns its children.
fn expand(mut branch: Branch, config: &SearchConfig) -> (Branch, Vec<Branch>) {
    branch.propagate(config);
    match branch.classify() {
        Some(index) => {
            let children = branch.branch_on(index, config);
            (branch, children)
        }
        None => (branch, Vec::new()),
    }
}
