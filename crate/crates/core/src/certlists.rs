//! Lists with certificates: multisets over a decidable-equality key set,
//! merge sort returning a re-checkable [`SortResult`], and the reverse /
//! append definitions used by the list lemma corpus.

use std::sync::Arc;

use rand::RngCore;
use thiserror::Error;

use crate::structures::{seeded_rng, DSet, Decision};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertListError {
    #[error("multisets over different key sets: {0} vs {1}")]
    KeySetMismatch(String, String),
}

/// Association list of `(key, count)`; keys pairwise eq-distinct, counts ≥ 1.
#[derive(Clone, Debug)]
pub struct Multiset<K> {
    keys: DSet<K>,
    entries: Vec<(K, usize)>,
}

impl<K: Clone + 'static> Multiset<K> {
    pub fn new(keys: DSet<K>) -> Self {
        Multiset { keys, entries: Vec::new() }
    }

    pub fn from_items(keys: DSet<K>, items: impl IntoIterator<Item = K>) -> Self {
        let mut m = Multiset::new(keys);
        for k in items {
            m.insert(k, 1);
        }
        m
    }

    pub fn insert(&mut self, key: K, count: usize) {
        if count == 0 {
            return;
        }
        let keys = &self.keys;
        match self.entries.iter_mut().find(|(k, _)| keys.eq(k, &key)) {
            Some((_, c)) => *c += count,
            None => self.entries.push((key, count)),
        }
    }

    pub fn count(&self, key: &K) -> usize {
        self.entries.iter().find(|(k, _)| self.keys.eq(k, key)).map_or(0, |(_, c)| *c)
    }

    pub fn entries(&self) -> &[(K, usize)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn key_set(&self) -> &DSet<K> {
        &self.keys
    }

    /// Pointwise sum of counts.
    pub fn sum(&self, other: &Multiset<K>) -> Result<Multiset<K>, CertListError> {
        self.same_keys(other)?;
        let mut out = self.clone();
        for (k, c) in &other.entries {
            out.insert(k.clone(), *c);
        }
        Ok(out)
    }

    /// Same keys with the same counts, compared under the key equality.
    pub fn mset_eq(&self, other: &Multiset<K>) -> bool {
        self.keys.name() == other.keys.name()
            && self.entries.len() == other.entries.len()
            && self.entries.iter().all(|(k, c)| other.count(k) == *c)
    }

    fn same_keys(&self, other: &Multiset<K>) -> Result<(), CertListError> {
        if self.keys.name() != other.keys.name() {
            return Err(CertListError::KeySetMismatch(self.keys.name().to_string(), other.keys.name().to_string()));
        }
        Ok(())
    }
}

pub fn mset_sum<K: Clone + 'static>(a: &Multiset<K>, b: &Multiset<K>) -> Result<Multiset<K>, CertListError> {
    a.sum(b)
}

pub fn mset_eq<K: Clone + 'static>(a: &Multiset<K>, b: &Multiset<K>) -> bool {
    a.mset_eq(b)
}

/// A decidable total preorder `≤` over a carrier.
pub struct DecTotalOrder<T> {
    base: DSet<T>,
    leq: Arc<dyn Fn(&T, &T) -> bool + Send + Sync>,
}

impl<T> Clone for DecTotalOrder<T> {
    fn clone(&self) -> Self {
        DecTotalOrder { base: self.base.clone(), leq: self.leq.clone() }
    }
}

impl<T: Clone + 'static> DecTotalOrder<T> {
    pub fn new(base: DSet<T>, leq: impl Fn(&T, &T) -> bool + Send + Sync + 'static) -> Self {
        DecTotalOrder { base, leq: Arc::new(leq) }
    }

    /// The `Ord` order of the carrier.
    pub fn natural(base: DSet<T>) -> Self
    where
        T: Ord,
    {
        DecTotalOrder::new(base, |x: &T, y: &T| x <= y)
    }

    pub fn base(&self) -> &DSet<T> {
        &self.base
    }

    pub fn leq(&self, x: &T, y: &T) -> bool {
        (self.leq)(x, y)
    }

    pub fn decide_leq(&self, x: &T, y: &T) -> Decision {
        Decision::from_bool(self.leq(x, y))
    }

    /// Sampled totality, transitivity, and antisymmetry up to eq. Returns the
    /// names of the properties that failed.
    pub fn check(&self, seed: u64, budget: usize) -> Vec<&'static str> {
        let mut rng = seeded_rng(seed, 7);
        let mut failed = Vec::new();
        let note = |name: &'static str, failed: &mut Vec<&'static str>| {
            if !failed.contains(&name) {
                failed.push(name);
            }
        };
        for _ in 0..budget {
            let draw = |r: &mut dyn RngCore| self.base.draw(r);
            let (x, y, z) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            if !(self.leq(&x, &y) || self.leq(&y, &x)) {
                note("totality", &mut failed);
            }
            if self.leq(&x, &y) && self.leq(&y, &z) && !self.leq(&x, &z) {
                note("transitivity", &mut failed);
            }
            if self.leq(&x, &y) && self.leq(&y, &x) && !self.base.eq(&x, &y) {
                note("antisymmetry", &mut failed);
            }
        }
        failed
    }
}

/// Sorted output with its evidence.
///
/// `ord_cert[i]` is the decision of `ys[i] ≤ ys[i+1]`; `perm[i]` is the
/// output position of input element `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortResult<T> {
    pub ys: Vec<T>,
    pub ord_cert: Vec<Decision>,
    pub perm: Vec<usize>,
}

/// Which parts of a [`SortResult`] re-checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SortCheck {
    pub permutation: bool,
    pub ordered: bool,
    pub counts: bool,
}

impl SortCheck {
    pub fn all(&self) -> bool {
        self.permutation && self.ordered && self.counts
    }
}

fn merge_sort_indices<T: Clone + 'static>(dto: &DecTotalOrder<T>, xs: &[T], idx: &mut [usize], buf: &mut Vec<usize>) {
    if idx.len() < 2 {
        return;
    }
    let mid = idx.len() / 2;
    let (left, right) = idx.split_at_mut(mid);
    merge_sort_indices(dto, xs, left, buf);
    merge_sort_indices(dto, xs, right, buf);
    buf.clear();
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        // ties go left, which keeps equal elements in input order
        if dto.leq(&xs[left[i]], &xs[right[j]]) {
            buf.push(left[i]);
            i += 1;
        } else {
            buf.push(right[j]);
            j += 1;
        }
    }
    buf.extend_from_slice(&left[i..]);
    buf.extend_from_slice(&right[j..]);
    idx.copy_from_slice(buf);
}

/// Stable top-down merge sort with an order certificate and permutation witness.
pub fn sort_certified<T: Clone + 'static>(dto: &DecTotalOrder<T>, xs: &[T]) -> SortResult<T> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    let mut buf = Vec::with_capacity(xs.len());
    merge_sort_indices(dto, xs, &mut order, &mut buf);
    let ys: Vec<T> = order.iter().map(|&i| xs[i].clone()).collect();
    let mut perm = vec![0; xs.len()];
    for (pos, &i) in order.iter().enumerate() {
        perm[i] = pos;
    }
    let ord_cert = ys.windows(2).map(|w| dto.decide_leq(&w[0], &w[1])).collect();
    SortResult { ys, ord_cert, perm }
}

/// Re-checks a sort result against its input, independently of how it was made.
pub fn check_sort_result<T: Clone + 'static>(dto: &DecTotalOrder<T>, xs: &[T], r: &SortResult<T>) -> SortCheck {
    let n = xs.len();
    let eq = |a: &T, b: &T| dto.base().eq(a, b);

    let mut seen = vec![false; n];
    let mut permutation = r.ys.len() == n && r.perm.len() == n;
    if permutation {
        for (i, &p) in r.perm.iter().enumerate() {
            if p >= n || seen[p] || !eq(&r.ys[p], &xs[i]) {
                permutation = false;
                break;
            }
            seen[p] = true;
        }
    }

    let expected_certs = r.ys.len().saturating_sub(1);
    let ordered = r.ord_cert.len() == expected_certs
        && r.ys.windows(2).zip(&r.ord_cert).all(|(w, c)| c.is_yes() && dto.leq(&w[0], &w[1]));

    let count_in = |v: &[T], x: &T| v.iter().filter(|y| eq(x, y)).count();
    let counts = r.ys.len() == n && xs.iter().all(|x| count_in(xs, x) == count_in(&r.ys, x));

    SortCheck { permutation, ordered, counts }
}

pub fn verify_sort_result<T: Clone + 'static>(dto: &DecTotalOrder<T>, xs: &[T], r: &SortResult<T>) -> bool {
    check_sort_result(dto, xs, r).all()
}

pub fn append<T: Clone>(xs: &[T], ys: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(xs.len() + ys.len());
    out.extend_from_slice(xs);
    out.extend_from_slice(ys);
    out
}

/// `rev [] = []`, `rev (x ∷ xs) = rev xs ++ [x]`. Quadratic.
pub fn rev<T: Clone>(xs: &[T]) -> Vec<T> {
    match xs.split_first() {
        None => Vec::new(),
        Some((x, rest)) => append(&rev(rest), std::slice::from_ref(x)),
    }
}

pub fn rev_linear<T: Clone>(xs: &[T]) -> Vec<T> {
    xs.iter().rev().cloned().collect()
}
