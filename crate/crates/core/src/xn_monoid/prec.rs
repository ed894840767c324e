use std::collections::HashSet;

use crate::error::{Error, Result};

use super::{omega_prec, Omega, XnElem, XnPair};

/// Ordering of a group's pairs forming `α ≺ α₁ ≺ β₁ ≺ … ≺ β_m ≺ β`.
pub type ChainCert = Vec<XnPair>;

/// One chain per pair of the right-hand side, in its sorted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionCert {
    pub targets: Vec<XnPair>,
    pub groups: Vec<ChainCert>,
}

impl PartitionCert {
    /// Re-checks the certificate against `w` and `v`.
    pub fn check(&self, w: &XnElem, v: &XnElem) -> bool {
        if self.targets != v.pairs() || self.groups.len() != self.targets.len() {
            return false;
        }
        let mut used: Vec<XnPair> = self.groups.iter().flatten().copied().collect();
        used.sort();
        used == w.pairs() && self.groups.iter().zip(&self.targets).all(|(g, t)| is_chain(g, t))
    }
}

pub(crate) fn is_chain(seq: &[XnPair], target: &XnPair) -> bool {
    let mut last = target.lo;
    for p in seq {
        if !omega_prec(last, p.lo) {
            return false;
        }
        last = p.hi;
    }
    omega_prec(last, target.hi)
}

/// `w ≺ (α,β)` for a single pair.
pub fn prec_single(w: &XnElem, target: &XnPair) -> Option<ChainCert> {
    let mut seq = w.pairs().to_vec();
    seq.sort_by_key(|p| (p.lo, p.hi));
    is_chain(&seq, target).then_some(seq)
}

struct Search<'a> {
    w: &'a [XnPair],
    targets: &'a [XnPair],
    last: Vec<Option<Omega>>,
    assign: Vec<usize>,
    failed: HashSet<(usize, Vec<(XnPair, Option<Omega>)>)>,
}

impl Search<'_> {
    fn fits(&self, t: usize, p: &XnPair) -> bool {
        let start = self.last[t].unwrap_or(self.targets[t].lo);
        omega_prec(start, p.lo) && omega_prec(p.hi, self.targets[t].hi)
    }

    fn key(&self, idx: usize) -> (usize, Vec<(XnPair, Option<Omega>)>) {
        let mut k: Vec<_> = self.targets.iter().copied().zip(self.last.iter().copied()).collect();
        k.sort();
        (idx, k)
    }

    fn run(&mut self, idx: usize) -> bool {
        if idx == self.w.len() {
            return true;
        }
        let key = self.key(idx);
        if self.failed.contains(&key) {
            return false;
        }
        let p = self.w[idx];
        let mut tried: Vec<(XnPair, Option<Omega>)> = Vec::new();
        for t in 0..self.targets.len() {
            let state = (self.targets[t], self.last[t]);
            if tried.contains(&state) || !self.fits(t, &p) {
                continue;
            }
            tried.push(state);
            let prev = self.last[t];
            self.last[t] = Some(p.hi);
            self.assign.push(t);
            if self.run(idx + 1) {
                return true;
            }
            self.assign.pop();
            self.last[t] = prev;
        }
        self.failed.insert(key);
        false
    }
}

/// `w ≺ v`: a partition of `w` into one interleaved chain per pair of `v`.
///
/// Chains have strictly increasing left endpoints, so pairs are placed in
/// sorted order and each group grows at its right end only.
pub fn prec(w: &XnElem, v: &XnElem) -> Result<Option<PartitionCert>> {
    w.same_n(v)?;
    let mut ws = w.pairs().to_vec();
    ws.sort_by_key(|p| (p.lo, p.hi));
    let targets = v.pairs();
    if ws.iter().any(|p| !targets.iter().any(|t| p.prec(t))) {
        return Ok(None);
    }
    let mut s = Search {
        w: &ws,
        targets,
        last: vec![None; targets.len()],
        assign: Vec::with_capacity(ws.len()),
        failed: HashSet::new(),
    };
    if !s.run(0) {
        return Ok(None);
    }
    let mut groups = vec![Vec::new(); targets.len()];
    for (p, &t) in ws.iter().zip(&s.assign) {
        groups[t].push(*p);
    }
    Ok(Some(PartitionCert { targets: targets.to_vec(), groups }))
}

fn some_order_chains(group: &mut Vec<XnPair>, k: usize, target: &XnPair) -> bool {
    if k == group.len() {
        return is_chain(group, target);
    }
    for i in k..group.len() {
        group.swap(k, i);
        if some_order_chains(group, k + 1, target) {
            group.swap(k, i);
            return true;
        }
        group.swap(k, i);
    }
    false
}

/// Exhaustive reference for [`prec`]: every labelled partition, every ordering.
pub fn prec_oracle(w: &XnElem, v: &XnElem) -> Result<bool> {
    w.same_n(v)?;
    if w.len() > 6 || v.len() > 4 {
        return Err(Error::Bound(format!("prec_oracle takes |w| ≤ 6, |v| ≤ 4, got {} and {}", w.len(), v.len())));
    }
    let (ws, vs) = (w.pairs(), v.pairs());
    if vs.is_empty() {
        return Ok(ws.is_empty());
    }
    let total = vs.len().pow(ws.len() as u32);
    for code in 0..total {
        let mut groups = vec![Vec::new(); vs.len()];
        let mut c = code;
        for p in ws {
            groups[c % vs.len()].push(*p);
            c /= vs.len();
        }
        if groups.iter_mut().zip(vs).all(|(g, t)| some_order_chains(g, 0, t)) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: u64, s: &str) -> XnElem {
        XnElem::parse(n, s).unwrap()
    }

    #[test]
    fn single_chains() {
        assert_eq!(prec_single(&x(4, "(1,2)"), &XnPair::fin(0, 3)), Some(vec![XnPair::fin(1, 2)]));
        assert_eq!(prec_single(&x(4, "(1,2)+(2,3)"), &XnPair::fin(0, 4)), None);
        let w = x(4, "(-inf,0)+(1,inf)");
        let c = prec_single(&w, &XnPair::full()).unwrap();
        assert!(is_chain(&c, &XnPair::full()));
        assert_eq!(prec_single(&XnElem::zero(4), &XnPair::fin(0, 1)), Some(vec![]));
    }

    #[test]
    fn three_pair_counterexample() {
        assert!(prec(&x(4, "(1,2)+(2,3)"), &x(4, "(0,4)")).unwrap().is_none());
        assert!(!prec_oracle(&x(4, "(1,2)+(2,3)"), &x(4, "(0,4)")).unwrap());
    }

    #[test]
    fn partitions() {
        let (w, v) = (x(4, "(0,1)+(2,3)"), x(4, "(-inf,4)"));
        let cert = prec(&w, &v).unwrap().unwrap();
        assert!(cert.check(&w, &v));
        assert_eq!(cert.groups[0], vec![XnPair::fin(0, 1), XnPair::fin(2, 3)]);
        assert!(prec_oracle(&w, &v).unwrap());
        let e = prec(&XnElem::zero(4), &x(4, "(1,2)+(0,3)")).unwrap().unwrap();
        assert!(e.groups.iter().all(Vec::is_empty));
    }

    #[test]
    fn max_elements() {
        let w = x(3, "(-inf,inf)+(0,1)");
        assert!(prec(&w, &x(3, "(-inf,inf)")).unwrap().is_none());
        assert!(!prec_oracle(&w, &x(3, "(-inf,inf)")).unwrap());
        assert!(prec(&x(3, "(-inf,inf)"), &x(3, "(-inf,inf)")).unwrap().is_some());
    }

    #[test]
    fn oracle_bound() {
        let big = x(3, "(0,1)+(0,1)+(0,1)+(0,1)+(0,1)+(0,1)+(0,1)");
        assert!(matches!(prec_oracle(&big, &x(3, "(0,3)")), Err(Error::Bound(_))));
        assert!(prec(&x(3, "(0,1)"), &x(4, "(0,3)")).is_err());
    }
}
