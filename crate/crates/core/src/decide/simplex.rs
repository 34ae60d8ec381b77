//! Exact two-phase primal simplex with bounded variables and Bland's rule.

use crate::rational::Rational;

use super::linear::{LinearConstraint, Relation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    /// Minimum of `cost · x` and a point attaining it.
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    beta: Vec<Rational>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    at_upper: Vec<bool>,
    upper: Vec<Option<Rational>>,
    reduced: Vec<Rational>,
}

enum Step {
    Optimal,
    Unbounded,
    Moved,
}

impl Tableau {
    fn nonbasic_value(&self, j: usize) -> Rational {
        if self.at_upper[j] {
            self.upper[j]
                .clone()
                .expect("at upper bound implies a finite bound")
        } else {
            Rational::zero()
        }
    }

    fn set_costs(&mut self, cost: &[Rational]) {
        let mut d = cost.to_vec();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    d[j] = &d[j] - cb * a;
                }
            }
        }
        self.reduced = d;
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let piv = self.rows[r][j].clone();
        if !piv.is_one() {
            for a in self.rows[r].iter_mut() {
                if !a.is_zero() {
                    *a = &*a / &piv;
                }
            }
        }
        let support: Vec<usize> = (0..self.rows[r].len())
            .filter(|&k| !self.rows[r][k].is_zero())
            .collect();
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for &k in &support {
                row[k] = &row[k] - &f * &pivot_row[k];
            }
        }
        if !self.reduced[j].is_zero() {
            let f = self.reduced[j].clone();
            for &k in &support {
                self.reduced[k] = &self.reduced[k] - &f * &pivot_row[k];
            }
        }
        let leaving = self.basis[r];
        self.is_basic[leaving] = false;
        self.is_basic[j] = true;
        self.basis[r] = j;
    }

    fn step(&mut self) -> Step {
        let n = self.reduced.len();
        // Bland: lowest-index improving column
        let mut entering = None;
        for j in 0..n {
            if self.is_basic[j] || self.upper[j].as_ref().is_some_and(|u| u.is_zero()) {
                continue;
            }
            let d = &self.reduced[j];
            if (!self.at_upper[j] && d.is_negative()) || (self.at_upper[j] && d.is_positive()) {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else {
            return Step::Optimal;
        };
        let increasing = !self.at_upper[j];

        // ratio test; None for the row means the entering column flips bounds
        let mut best: Option<(Rational, Option<(usize, bool)>)> =
            self.upper[j].clone().map(|u| (u, None));
        for i in 0..self.rows.len() {
            let alpha = &self.rows[i][j];
            if alpha.is_zero() {
                continue;
            }
            // rate at which the basic variable decreases per unit step
            let rate = if increasing { alpha.clone() } else { -alpha };
            let (t, to_upper) = if rate.is_positive() {
                (&self.beta[i] / &rate, false)
            } else {
                match &self.upper[self.basis[i]] {
                    Some(u) => ((u - &self.beta[i]) / (-rate), true),
                    None => continue,
                }
            };
            let better = match &best {
                None => true,
                Some((bt, row)) => {
                    t < *bt
                        || (t == *bt
                            && matches!(row, Some((r, _)) if self.basis[i] < self.basis[*r]))
                }
            };
            if better {
                best = Some((t, Some((i, to_upper))));
            }
        }
        let Some((t, row)) = best else {
            return Step::Unbounded;
        };

        let signed_t = if increasing { t.clone() } else { -&t };
        if !t.is_zero() {
            for i in 0..self.rows.len() {
                let alpha = &self.rows[i][j];
                if !alpha.is_zero() {
                    self.beta[i] = &self.beta[i] - alpha * &signed_t;
                }
            }
        }
        match row {
            None => {
                self.at_upper[j] = !self.at_upper[j];
            }
            Some((r, to_upper)) => {
                let entering_value = self.nonbasic_value(j) + &signed_t;
                let leaving = self.basis[r];
                self.at_upper[leaving] = to_upper;
                self.at_upper[j] = false;
                self.beta[r] = entering_value;
                self.pivot(r, j);
            }
        }
        Step::Moved
    }

    fn run(&mut self) -> Step {
        loop {
            match self.step() {
                Step::Moved => continue,
                done => return done,
            }
        }
    }
}

/// Minimizes `cost · x` subject to `constraints` and `lower ≤ x ≤ upper`.
pub fn solve_lp(
    constraints: &[LinearConstraint],
    lower: &[Rational],
    upper: &[Rational],
    cost: &[Rational],
) -> LpOutcome {
    let nvars = lower.len();
    if (0..nvars).any(|v| lower[v] > upper[v]) {
        return LpOutcome::Infeasible;
    }
    // free columns; fixed variables fold into the right-hand sides
    let mut column_of = vec![None; nvars];
    let mut free = Vec::new();
    for v in 0..nvars {
        if lower[v] < upper[v] {
            column_of[v] = Some(free.len());
            free.push(v);
        }
    }

    struct Row {
        coeffs: Vec<(usize, Rational)>,
        relation: Relation,
        rhs: Rational,
    }
    let mut rows = Vec::new();
    for c in constraints {
        let mut rhs = c.constant.clone();
        let mut coeffs = Vec::new();
        for (v, a) in &c.coeffs {
            rhs = rhs - a * &lower[v.0];
            if let Some(col) = column_of[v.0] {
                coeffs.push((col, a.clone()));
            }
        }
        if coeffs.is_empty() {
            let ok = match c.relation {
                Relation::Le => !rhs.is_negative(),
                Relation::Eq => rhs.is_zero(),
                Relation::Ge => !rhs.is_positive(),
            };
            if !ok {
                return LpOutcome::Infeasible;
            }
            continue;
        }
        rows.push(Row {
            coeffs,
            relation: c.relation,
            rhs,
        });
    }

    let nfree = free.len();
    let nslack = rows.iter().filter(|r| r.relation != Relation::Eq).count();
    let m = rows.len();
    let mut slack_col = nfree;
    let mut table = Vec::with_capacity(m);
    let mut beta = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut artificial_rows = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut line = vec![Rational::zero(); nfree + nslack];
        for (col, a) in &row.coeffs {
            line[*col] = a.clone();
        }
        let mut slack = None;
        match row.relation {
            Relation::Le => {
                line[slack_col] = Rational::one();
                slack = Some(slack_col);
                slack_col += 1;
            }
            Relation::Ge => {
                line[slack_col] = -Rational::one();
                slack = Some(slack_col);
                slack_col += 1;
            }
            Relation::Eq => {}
        }
        let mut rhs = row.rhs.clone();
        if rhs.is_negative() {
            for a in line.iter_mut() {
                *a = -&*a;
            }
            rhs = -rhs;
        }
        match slack {
            Some(s) if line[s].is_one() => basis.push(s),
            _ => {
                basis.push(usize::MAX);
                artificial_rows.push(i);
            }
        }
        table.push(line);
        beta.push(rhs);
    }
    let nart = artificial_rows.len();
    let ncols = nfree + nslack + nart;
    for line in table.iter_mut() {
        line.resize(ncols, Rational::zero());
    }
    for (k, &i) in artificial_rows.iter().enumerate() {
        let col = nfree + nslack + k;
        table[i][col] = Rational::one();
        basis[i] = col;
    }
    let mut upper_cols: Vec<Option<Rational>> =
        free.iter().map(|&v| Some(&upper[v] - &lower[v])).collect();
    upper_cols.extend(std::iter::repeat_n(None, nslack + nart));
    let mut is_basic = vec![false; ncols];
    for &b in &basis {
        is_basic[b] = true;
    }
    let mut tab = Tableau {
        rows: table,
        beta,
        basis,
        is_basic,
        at_upper: vec![false; ncols],
        upper: upper_cols,
        reduced: Vec::new(),
    };

    if nart > 0 {
        let mut phase1 = vec![Rational::zero(); ncols];
        for c in phase1.iter_mut().skip(nfree + nslack) {
            *c = Rational::one();
        }
        tab.set_costs(&phase1);
        if let Step::Unbounded = tab.run() {
            unreachable!("phase one objective is bounded below by zero");
        }
        let infeasibility = (0..m)
            .filter(|&i| tab.basis[i] >= nfree + nslack)
            .fold(Rational::zero(), |acc, i| acc + &tab.beta[i]);
        if infeasibility.is_positive() {
            return LpOutcome::Infeasible;
        }
        // drive zero-level artificials out of the basis, dropping redundant rows
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] < nfree + nslack {
                i += 1;
                continue;
            }
            let col = (0..nfree + nslack).find(|&j| !tab.is_basic[j] && !tab.rows[i][j].is_zero());
            match col {
                Some(j) => {
                    let value = tab.nonbasic_value(j);
                    tab.at_upper[j] = false;
                    tab.beta[i] = value;
                    tab.pivot(i, j);
                    i += 1;
                }
                None => {
                    let art = tab.basis[i];
                    tab.is_basic[art] = false;
                    tab.rows.remove(i);
                    tab.beta.remove(i);
                    tab.basis.remove(i);
                }
            }
        }
        for j in nfree + nslack..ncols {
            tab.upper[j] = Some(Rational::zero());
            tab.at_upper[j] = false;
        }
    }

    let mut phase2 = vec![Rational::zero(); ncols];
    for (col, &v) in free.iter().enumerate() {
        phase2[col] = cost[v].clone();
    }
    tab.set_costs(&phase2);
    if let Step::Unbounded = tab.run() {
        return LpOutcome::Unbounded;
    }

    let mut point = lower.to_vec();
    for (col, &v) in free.iter().enumerate() {
        if !tab.is_basic[col] {
            point[v] = &point[v] + tab.nonbasic_value(col);
        }
    }
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < nfree {
            let v = free[b];
            point[v] = &lower[v] + &tab.beta[i];
        }
    }
    let value = cost
        .iter()
        .zip(&point)
        .fold(Rational::zero(), |acc, (c, x)| acc + c * x);
    LpOutcome::Optimal { value, point }
}
