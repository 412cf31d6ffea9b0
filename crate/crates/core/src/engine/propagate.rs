//! Fixpoint propagation (rules R1–R4) and branching on rational roots.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::{Branch, BranchStatus, Constraint, ConstraintStatus, SearchConfig};
use crate::exactalg::{resultant_eliminate, Polynomial, Rational};
use crate::multfn::{AssignOutcome, PrimePower};

type Poly = Polynomial<PrimePower>;

/// Scalar-normalized form used for deduplication.
pub(crate) fn normalize(p: &Poly) -> Poly {
    p.monic()
}

impl Constraint {
    pub(crate) fn refresh_status(&mut self, config: &SearchConfig) {
        self.status = if self.polynomial.is_zero() {
            ConstraintStatus::Satisfied
        } else if self.polynomial.variables().len() > config.variable_cap
            || self.polynomial.max_var_degree() > config.degree_cap
        {
            ConstraintStatus::Deferred
        } else {
            ConstraintStatus::Active
        };
    }

    fn sole_var(&self) -> Option<PrimePower> {
        let vars = self.polynomial.variables();
        if vars.len() == 1 {
            vars.into_iter().next()
        } else {
            None
        }
    }
}

impl Branch {
    fn contradict(&mut self, reason: String) {
        self.status = BranchStatus::Contradiction;
        self.reason = Some(reason);
    }

    /// Assigns `var := value` and substitutes it everywhere, resolving bindings that become constant.
    pub(crate) fn assign(&mut self, var: PrimePower, value: Rational, config: &SearchConfig) {
        let mut queue = vec![(var, value)];
        while let Some((var, value)) = queue.pop() {
            if self.fn_state.assign_var(var, value.clone()) == AssignOutcome::Contradiction {
                self.contradict(format!("{var} assigned two different values"));
                return;
            }
            for c in &mut self.constraints {
                if c.polynomial.degree_in(&var) > 0 {
                    c.polynomial = normalize(&c.polynomial.substitute_value(&var, &value));
                    c.refresh_status(config);
                }
            }
            let mut resolved = Vec::new();
            self.bindings.retain_mut(|(bound, expr)| {
                if expr.degree_in(&var) > 0 {
                    *expr = expr.substitute_value(&var, &value);
                }
                match expr.constant_value() {
                    Some(v) => {
                        resolved.push((*bound, v));
                        false
                    }
                    None => true,
                }
            });
            queue.extend(resolved);
        }
        self.cleanup();
    }

    /// Drops satisfied and duplicate constraints, keeping the earliest copy.
    fn cleanup(&mut self) {
        let mut seen = BTreeSet::new();
        self.constraints.retain(|c| {
            c.status != ConstraintStatus::Satisfied && seen.insert(c.polynomial.clone())
        });
    }

    /// R1: constant constraints are either satisfied or contradictory.
    fn rule_constants(&mut self) -> bool {
        for c in &self.constraints {
            if let Some(v) = c.polynomial.constant_value() {
                if !v.is_zero() {
                    let reason = format!("constraint from {} reduced to {v} = 0", origin_label(c));
                    self.contradict(reason);
                    return true;
                }
            }
        }
        false
    }

    /// R2: a univariate linear constraint determines its variable.
    fn rule_linear(&mut self, config: &SearchConfig) -> bool {
        let found = self.constraints.iter().find_map(|c| {
            let var = c.sole_var()?;
            if c.polynomial.degree_in(&var) != 1 {
                return None;
            }
            let coeffs = c.polynomial.coefficients_in(&var);
            let root = -coeffs[0].constant_value()? / coeffs[1].constant_value()?;
            Some((var, root))
        });
        match found {
            Some((var, root)) => {
                self.assign(var, root, config);
                true
            }
            None => false,
        }
    }

    /// R2, definition form: a constraint `c·v + g = 0` with constant `c ≠ 0`
    /// eliminates `v := −g/c` from every other constraint.
    fn rule_definition(&mut self, config: &SearchConfig) -> bool {
        for i in 0..self.constraints.len() {
            let poly = &self.constraints[i].polynomial;
            let mut candidates: Vec<PrimePower> = poly
                .variables()
                .into_iter()
                .filter(|v| poly.degree_in(v) == 1)
                .collect();
            candidates.sort_by_key(|v| std::cmp::Reverse(v.value()));
            for var in candidates {
                let coeffs = poly.coefficients_in(&var);
                let Some(lead) = coeffs[1].constant_value() else {
                    continue;
                };
                let expr = coeffs[0].scale(&(-lead.recip()));
                if let Some(updated) = self.try_eliminate(i, &var, &expr, config) {
                    let (constraints, bindings) = updated;
                    self.constraints = constraints;
                    self.bindings = bindings;
                    self.bindings.push((var, expr));
                    self.cleanup();
                    return true;
                }
            }
        }
        false
    }

    #[allow(clippy::type_complexity)]
    fn try_eliminate(
        &self,
        skip: usize,
        var: &PrimePower,
        expr: &Poly,
        config: &SearchConfig,
    ) -> Option<(Vec<Constraint>, Vec<(PrimePower, Poly)>)> {
        let mut constraints = Vec::with_capacity(self.constraints.len() - 1);
        for (j, c) in self.constraints.iter().enumerate() {
            if j == skip {
                continue;
            }
            let mut c = c.clone();
            if c.polynomial.degree_in(var) > 0 {
                let p = c.polynomial.substitute_capped(var, expr, config.degree_cap).ok()?;
                c.polynomial = normalize(&p);
                c.refresh_status(config);
            }
            constraints.push(c);
        }
        let mut bindings = self.bindings.clone();
        for (_, b) in &mut bindings {
            if b.degree_in(var) > 0 {
                *b = b.substitute_capped(var, expr, config.degree_cap).ok()?;
            }
        }
        Some((constraints, bindings))
    }

    /// R3: two univariate constraints in the same variable are replaced by their gcd.
    fn rule_gcd(&mut self, config: &SearchConfig) -> bool {
        let n = self.constraints.len();
        for i in 0..n {
            let Some(vi) = self.constraints[i].sole_var() else { continue };
            for j in i + 1..n {
                if self.constraints[j].sole_var() != Some(vi) {
                    continue;
                }
                let a = self.constraints[i].polynomial.to_unipoly(&vi).expect("univariate");
                let b = self.constraints[j].polynomial.to_unipoly(&vi).expect("univariate");
                let g = a.gcd(&b);
                if g.degree() == Some(0) {
                    let reason = format!(
                        "{} and {} have no common root",
                        origin_label(&self.constraints[i]),
                        origin_label(&self.constraints[j])
                    );
                    self.contradict(reason);
                    return true;
                }
                self.constraints[i].polynomial = Polynomial::from_unipoly(&vi, &g);
                self.constraints[i].derived = true;
                self.constraints[i].refresh_status(config);
                self.constraints.remove(j);
                self.cleanup();
                return true;
            }
        }
        false
    }

    /// R4: eliminate a shared variable from two constraints in at most two variables.
    fn rule_resultant(&mut self, config: &SearchConfig) -> bool {
        let n = self.constraints.len();
        for i in 0..n {
            let vi = self.constraints[i].polynomial.variables();
            if vi.len() > 2 || self.constraints[i].status != ConstraintStatus::Active {
                continue;
            }
            for j in i + 1..n {
                let vj = self.constraints[j].polynomial.variables();
                if vj.len() > 2 || self.constraints[j].status != ConstraintStatus::Active {
                    continue;
                }
                let union: BTreeSet<_> = vi.union(&vj).copied().collect();
                if union.len() != 2 || (vi.len() == 1 && vj.len() == 1) {
                    continue;
                }
                let shared: Vec<PrimePower> = vi.intersection(&vj).copied().collect();
                let Some(&var) = shared.iter().max_by_key(|v| v.value()) else { continue };
                let (p, q) = (&self.constraints[i].polynomial, &self.constraints[j].polynomial);
                if p.degree_in(&var) > 4 || q.degree_in(&var) > 4 {
                    continue;
                }
                let key = (p.clone(), q.clone());
                if self.tried.contains(&key) {
                    continue;
                }
                self.tried.insert(key);
                let res = resultant_eliminate(p, q, &var).expect("shared variable has positive degree");
                if res.is_zero() || res.max_var_degree() > config.degree_cap {
                    continue;
                }
                if let Some(v) = res.constant_value() {
                    let reason = format!(
                        "{} and {} are incompatible (resultant {v})",
                        origin_label(&self.constraints[i]),
                        origin_label(&self.constraints[j])
                    );
                    self.contradict(reason);
                    return true;
                }
                let poly = normalize(&res);
                if self.constraints.iter().any(|c| c.polynomial == poly) {
                    continue;
                }
                let mut c = Constraint {
                    origin: self.constraints[i].origin.max(self.constraints[j].origin),
                    polynomial: poly,
                    status: ConstraintStatus::Active,
                    derived: true,
                };
                c.refresh_status(config);
                self.constraints.push(c);
                return true;
            }
        }
        false
    }

    /// Applies the rules in priority order until none fires.
    pub fn propagate(&mut self, config: &SearchConfig) {
        self.cleanup();
        while self.status == BranchStatus::Open {
            let fired = self.rule_constants()
                || self.rule_linear(config)
                || self.rule_definition(config)
                || self.rule_gcd(config)
                || self.rule_resultant(config);
            if !fired {
                break;
            }
        }
    }

    /// Index of the constraint to branch on: lowest degree, then smallest origin.
    pub(crate) fn branching_candidate(&self) -> Option<usize> {
        self.constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| c.status == ConstraintStatus::Active && c.sole_var().is_some())
            .min_by_key(|(i, c)| (c.polynomial.total_degree(), c.origin.n, *i))
            .map(|(i, _)| i)
    }

    /// One child per rational root of a univariate constraint (ascending), plus a
    /// terminal stuck child for a non-constant cofactor without rational roots.
    pub fn branch_on(&self, index: usize, config: &SearchConfig) -> Vec<Branch> {
        let constraint = &self.constraints[index];
        let var = constraint.sole_var().expect("branching needs a univariate constraint");
        let uni = constraint.polynomial.to_unipoly(&var).expect("univariate");
        let roots = uni.rational_roots();
        let mut cofactor = uni.clone();
        for r in &roots {
            while cofactor.degree().unwrap_or(0) > 0 && cofactor.eval(r).is_zero() {
                cofactor = cofactor.deflate(r);
            }
        }
        let mut children = Vec::with_capacity(roots.len() + 1);
        for (k, r) in roots.into_iter().enumerate() {
            let mut child = self.child(k, format!("{var}={r}"));
            child.constraints.remove(index);
            child.assign(var, r, config);
            children.push(child);
        }
        if cofactor.degree().unwrap_or(0) > 0 {
            let pending = Polynomial::from_unipoly(&var, &cofactor);
            let mut child = self.child(children.len(), format!("{var}:[{pending}]"));
            child.constraints[index].polynomial = normalize(&pending);
            child.status = BranchStatus::Stuck;
            child.reason = Some(format!("{pending} = 0 has no rational root"));
            children.push(child);
        }
        children
    }

    fn child(&self, k: usize, label: String) -> Branch {
        let mut child = self.clone();
        child.path.push(k);
        child.labels.push(label);
        child
    }
}

fn origin_label(c: &Constraint) -> String {
    let o = c.origin;
    if c.derived {
        format!("derived constraint (n={})", o.n)
    } else {
        format!("n={} at ({},{})", o.n, o.x, o.y)
    }
}
