//! Exact contraction of sparse tensor networks by greedy variable elimination.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::scalars::{Field, Scalar};

pub type VarId = usize;

/// A sparse tensor: absent keys are zero, stored values are nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct Factor {
    vars: Vec<VarId>,
    table: HashMap<Vec<u16>, Scalar>,
}

impl Factor {
    /// Repeated variables restrict the table to the diagonal.
    pub fn new(vars: Vec<VarId>, entries: impl IntoIterator<Item = (Vec<u16>, Scalar)>) -> Self {
        let mut distinct: Vec<VarId> = Vec::new();
        let mut slot = Vec::with_capacity(vars.len());
        for &v in &vars {
            match distinct.iter().position(|&d| d == v) {
                Some(p) => slot.push(p),
                None => {
                    slot.push(distinct.len());
                    distinct.push(v);
                }
            }
        }
        let mut table: HashMap<Vec<u16>, Scalar> = HashMap::new();
        'entries: for (key, value) in entries {
            debug_assert_eq!(key.len(), vars.len());
            if value.is_zero() {
                continue;
            }
            let mut reduced = vec![u16::MAX; distinct.len()];
            for (k, &p) in key.iter().zip(&slot) {
                if reduced[p] == u16::MAX {
                    reduced[p] = *k;
                } else if reduced[p] != *k {
                    continue 'entries;
                }
            }
            accumulate(&mut table, reduced, &value);
        }
        Factor { vars: distinct, table }
    }

    pub fn scalar(value: Scalar) -> Self {
        Factor::new(Vec::new(), [(Vec::new(), value)])
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn get(&self, key: &[u16]) -> Option<&Scalar> {
        self.table.get(key)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u16>, &Scalar)> {
        self.table.iter()
    }

    /// Values reordered to the given variable order, which must be a permutation of `vars`.
    pub fn reordered(&self, order: &[VarId]) -> Factor {
        let pos: Vec<usize> = order.iter().map(|v| self.vars.iter().position(|w| w == v).expect("variable of the factor")).collect();
        let table = self.table.iter().map(|(k, v)| (pos.iter().map(|&p| k[p]).collect(), v.clone())).collect();
        Factor { vars: order.to_vec(), table }
    }
}

fn accumulate(table: &mut HashMap<Vec<u16>, Scalar>, key: Vec<u16>, value: &Scalar) {
    match table.get_mut(&key) {
        Some(existing) => {
            *existing = &*existing + value;
            if existing.is_zero() {
                table.remove(&key);
            }
        }
        None => {
            table.insert(key, value.clone());
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionStats {
    pub simplices: usize,
    /// Products formed while joining factors.
    pub terms: usize,
}

/// Variables with finite domains and the factors over them.
#[derive(Debug, Clone)]
pub struct Network {
    field: Field,
    domains: Vec<usize>,
    factors: Vec<Factor>,
}

impl Network {
    pub fn new(field: Field) -> Self {
        Network { field, domains: Vec::new(), factors: Vec::new() }
    }

    pub fn add_var(&mut self, domain: usize) -> VarId {
        assert!(domain <= u16::MAX as usize, "domain too large for a u16 key");
        self.domains.push(domain);
        self.domains.len() - 1
    }

    pub fn domain(&self, v: VarId) -> usize {
        self.domains[v]
    }

    pub fn add_factor(&mut self, factor: Factor) {
        self.factors.push(factor);
    }

    /// Sums out every variable not in `open`; the result is indexed by `open` in order.
    pub fn contract(self, open: &[VarId]) -> (Factor, ContractionStats) {
        let Network { field, domains, mut factors } = self;
        let mut stats = ContractionStats::default();
        let keep: HashSet<VarId> = open.iter().copied().collect();
        let mut used = vec![false; domains.len()];
        for f in &factors {
            for &v in &f.vars {
                used[v] = true;
            }
        }
        // A variable that no factor mentions contributes its domain size.
        let mut free_weight = field.one();
        for (v, &d) in domains.iter().enumerate() {
            if !used[v] && !keep.contains(&v) {
                free_weight = free_weight * field.int(d as i64);
            }
        }
        let mut remaining: Vec<VarId> = (0..domains.len()).filter(|v| used[*v] && !keep.contains(v)).collect();
        while !remaining.is_empty() {
            let (idx, _) = remaining
                .iter()
                .enumerate()
                .map(|(i, &v)| (i, elimination_cost(&factors, v)))
                .min_by_key(|&(_, cost)| cost)
                .expect("nonempty");
            let var = remaining.swap_remove(idx);
            let (touching, rest): (Vec<Factor>, Vec<Factor>) = factors.into_iter().partition(|f| f.vars.contains(&var));
            factors = rest;
            let joined = touching.into_iter().reduce(|a, b| join(&a, &b, &mut stats)).expect("variable is used");
            factors.push(sum_out(&joined, var));
        }
        let mut result = factors.into_iter().fold(Factor::scalar(field.one()), |a, b| join(&a, &b, &mut stats));
        for &v in open {
            if !result.vars.contains(&v) {
                // Open variable with no constraint: constant along it.
                let mut table = HashMap::new();
                for (k, val) in &result.table {
                    for x in 0..domains[v] as u16 {
                        let mut key = k.clone();
                        key.push(x);
                        table.insert(key, val.clone());
                    }
                }
                result.vars.push(v);
                result.table = table;
            }
        }
        if !free_weight.is_one() {
            for val in result.table.values_mut() {
                *val = &*val * &free_weight;
            }
        }
        (result.reordered(open), stats)
    }

    /// Full contraction to a scalar.
    pub fn evaluate(self) -> (Scalar, ContractionStats) {
        let field = self.field;
        let (f, stats) = self.contract(&[]);
        (f.get(&[]).cloned().unwrap_or_else(|| field.zero()), stats)
    }
}

/// (resulting arity, work estimate) for eliminating `var`.
fn elimination_cost(factors: &[Factor], var: VarId) -> (usize, usize) {
    let mut vars: HashSet<VarId> = HashSet::new();
    let mut work = 1usize;
    for f in factors.iter().filter(|f| f.vars.contains(&var)) {
        vars.extend(f.vars.iter().copied());
        work = work.saturating_mul(f.table.len().max(1));
    }
    (vars.len() - 1, work)
}

/// Pointwise product over the union of variables, by hash join on the shared ones.
fn join(a: &Factor, b: &Factor, stats: &mut ContractionStats) -> Factor {
    let (a, b) = if a.table.len() >= b.table.len() { (a, b) } else { (b, a) };
    let shared: Vec<VarId> = b.vars.iter().copied().filter(|v| a.vars.contains(v)).collect();
    let a_pos: Vec<usize> = shared.iter().map(|v| a.vars.iter().position(|w| w == v).unwrap()).collect();
    let b_pos: Vec<usize> = shared.iter().map(|v| b.vars.iter().position(|w| w == v).unwrap()).collect();
    let b_extra: Vec<usize> = (0..b.vars.len()).filter(|p| !b_pos.contains(p)).collect();
    let mut index: HashMap<Vec<u16>, Vec<(&Vec<u16>, &Scalar)>> = HashMap::new();
    for (k, v) in &b.table {
        index.entry(b_pos.iter().map(|&p| k[p]).collect()).or_default().push((k, v));
    }
    let mut vars = a.vars.clone();
    vars.extend(b_extra.iter().map(|&p| b.vars[p]));
    let mut table = HashMap::new();
    for (ka, va) in &a.table {
        let probe: Vec<u16> = a_pos.iter().map(|&p| ka[p]).collect();
        let Some(matches) = index.get(&probe) else { continue };
        for (kb, vb) in matches {
            stats.terms += 1;
            let mut key = ka.clone();
            key.extend(b_extra.iter().map(|&p| kb[p]));
            let product = va * *vb;
            if !product.is_zero() {
                table.insert(key, product);
            }
        }
    }
    Factor { vars, table }
}

fn sum_out(f: &Factor, var: VarId) -> Factor {
    let pos = f.vars.iter().position(|&v| v == var).expect("variable of the factor");
    let vars: Vec<VarId> = f.vars.iter().copied().filter(|&v| v != var).collect();
    let mut table = HashMap::new();
    for (k, v) in &f.table {
        let mut key = k.clone();
        key.remove(pos);
        accumulate(&mut table, key, v);
    }
    Factor { vars, table }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;

    fn q() -> Field {
        Field::new(1).unwrap()
    }

    fn matrix_factor(vars: [VarId; 2], m: [[i64; 2]; 2]) -> Factor {
        let f = q();
        Factor::new(vars.to_vec(), (0..2).flat_map(|i| (0..2).map(move |j| (vec![i as u16, j as u16], f.int(m[i][j])))))
    }

    #[test]
    fn matrix_chain_matches_direct_product() {
        let mut net = Network::new(q());
        let v: Vec<VarId> = (0..3).map(|_| net.add_var(2)).collect();
        net.add_factor(matrix_factor([v[0], v[1]], [[1, 2], [3, 4]]));
        net.add_factor(matrix_factor([v[1], v[2]], [[5, 6], [7, 8]]));
        let (out, _) = net.contract(&[v[0], v[2]]);
        // [[1,2],[3,4]]·[[5,6],[7,8]] = [[19,22],[43,50]]
        assert_eq!(out.get(&[0, 0]), Some(&q().int(19)));
        assert_eq!(out.get(&[0, 1]), Some(&q().int(22)));
        assert_eq!(out.get(&[1, 0]), Some(&q().int(43)));
        assert_eq!(out.get(&[1, 1]), Some(&q().int(50)));
    }

    #[test]
    fn trace_of_a_cycle() {
        let mut net = Network::new(q());
        let a = net.add_var(2);
        let b = net.add_var(2);
        net.add_factor(matrix_factor([a, b], [[1, 2], [3, 4]]));
        net.add_factor(matrix_factor([b, a], [[1, 0], [0, 1]]));
        assert_eq!(net.evaluate().0, q().int(5));
    }

    #[test]
    fn repeated_variable_takes_the_diagonal() {
        let mut net = Network::new(q());
        let a = net.add_var(2);
        net.add_factor(matrix_factor([a, a], [[1, 2], [3, 4]]));
        assert_eq!(net.evaluate().0, q().int(5));
    }

    #[test]
    fn unconstrained_variables_count_their_domain() {
        let mut net = Network::new(q());
        net.add_var(3);
        let b = net.add_var(2);
        let (out, _) = net.contract(&[b]);
        assert_eq!(out.get(&[1]), Some(&q().int(3)));
    }
}
