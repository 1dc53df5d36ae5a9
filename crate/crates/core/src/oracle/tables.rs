//! The index-equality subsets of a sixth-order correlation and the sets of
//! Kronecker-delta products they generate.
//!
//! Positions 1..6 of a correlation carry the indices (k, m, n, k′, m′, n′) in
//! that order; they are stored 0-based as bitmasks.

use super::linalg::{parse_form, span_key, Form};

/// Bitmask of a group of positions.
pub type Block = u8;

/// A set partition of the six positions, blocks sorted by lowest position.
pub type Partition = Vec<Block>;

fn mask(positions: &[u8]) -> Block {
    positions.iter().fold(0, |m, &p| m | 1 << (p - 1))
}

/// Pairings: three blocks of two.
const L1: [[[u8; 2]; 3]; 15] = [
    [[1, 2], [3, 4], [5, 6]],
    [[1, 2], [3, 5], [4, 6]],
    [[1, 2], [3, 6], [4, 5]],
    [[1, 3], [2, 4], [5, 6]],
    [[1, 3], [2, 5], [4, 6]],
    [[1, 3], [2, 6], [4, 5]],
    [[1, 4], [2, 3], [5, 6]],
    [[1, 4], [2, 5], [3, 6]],
    [[1, 4], [2, 6], [3, 5]],
    [[1, 5], [2, 3], [4, 6]],
    [[1, 5], [2, 4], [3, 6]],
    [[1, 5], [2, 6], [3, 4]],
    [[1, 6], [2, 3], [4, 5]],
    [[1, 6], [2, 4], [3, 5]],
    [[1, 6], [2, 5], [3, 4]],
];

/// Two blocks of three.
const L2: [[[u8; 3]; 2]; 10] = [
    [[1, 2, 3], [4, 5, 6]],
    [[1, 2, 4], [3, 5, 6]],
    [[1, 2, 5], [3, 4, 6]],
    [[1, 2, 6], [3, 4, 5]],
    [[1, 3, 4], [2, 5, 6]],
    [[1, 3, 5], [2, 4, 6]],
    [[1, 3, 6], [2, 4, 5]],
    [[1, 4, 5], [2, 3, 6]],
    [[1, 4, 6], [2, 3, 5]],
    [[1, 5, 6], [2, 3, 4]],
];

/// A pair and a quadruple.
const L3: [([u8; 2], [u8; 4]); 15] = [
    ([1, 2], [3, 4, 5, 6]),
    ([1, 3], [2, 4, 5, 6]),
    ([1, 4], [2, 3, 5, 6]),
    ([1, 5], [2, 3, 4, 6]),
    ([1, 6], [2, 3, 4, 5]),
    ([2, 3], [1, 4, 5, 6]),
    ([2, 4], [1, 3, 5, 6]),
    ([2, 5], [1, 3, 4, 6]),
    ([2, 6], [1, 3, 4, 5]),
    ([3, 4], [1, 2, 5, 6]),
    ([3, 5], [1, 2, 4, 6]),
    ([3, 6], [1, 2, 4, 5]),
    ([4, 5], [1, 2, 3, 6]),
    ([4, 6], [1, 2, 3, 5]),
    ([5, 6], [1, 2, 3, 4]),
];

/// The delta-product sets; the first element of each is its leader.
const D_SETS: [&[&[&str]]; 14] = [
    &[&["k-k'", "m-m'", "n-n'"], &["k-n'", "m-m'", "n-k'"]],
    &[
        &["k-k'", "m+n'", "n+m'"],
        &["k+m'", "m+k'", "n-n'"],
        &["k+m'", "m+n'", "n-k'"],
        &["k-n'", "m+k'", "n+m'"],
    ],
    &[&["k+n", "m-m'", "k'+n'"]],
    &[
        &["k-m-k'", "n+m'-n'"],
        &["k-m-n'", "n-k'+m'"],
        &["k+m'-n'", "m-n+k'"],
        &["k-k'+m'", "m-n+n'"],
    ],
    &[&["k-m+m'", "n-k'-n'"], &["k-k'-n'", "m-n-m'"]],
    &[&["k+n-k'", "m-m'+n'"], &["k+n-n'", "m+k'-m'"]],
    &[&["k+n+m'", "m+k'+n'"]],
    &[&["k+n", "m+k'-m'+n'"]],
    &[
        &["k-k'", "m-n-m'+n'"],
        &["k-n'", "m-n+k'-m'"],
        &["n-k'", "k-m+m'-n'"],
        &["n-n'", "k-m-k'+m'"],
    ],
    &[&["k+m'", "m-n+k'+n'"], &["n+m'", "k-m-k'-n'"]],
    &[&["m-m'", "k+n-k'-n'"]],
    &[&["m+k'", "k+n+m'-n'"], &["m+n'", "k+n-k'+m'"]],
    &[&["k'+n'", "k-m+n+m'"]],
    &[&["k-m+n-k'+m'-n'"]],
];

/// Index of the D set whose leader defines each Q_l, l = 1..11.
pub const Q_LEADERS: [usize; 11] = [1, 2, 3, 4, 5, 7, 8, 9, 10, 11, 14];

/// A product of Kronecker deltas, one linear form per factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaProduct {
    pub forms: Vec<Form>,
}

impl DeltaProduct {
    pub fn parse(factors: &[&str]) -> Self {
        Self {
            forms: factors
                .iter()
                .map(|f| parse_form(f).expect("well-formed delta table"))
                .collect(),
        }
    }

    /// Canonical key of the lattice the product selects within S_i × S_i.
    pub fn key(&self) -> Vec<Form> {
        span_key(&self.forms)
    }

    /// Image under an index permutation given as new[position] = old[perm[position]].
    pub fn permuted(&self, perm: [usize; 6]) -> Self {
        Self {
            forms: self
                .forms
                .iter()
                .map(|f| std::array::from_fn(|j| f[perm[j]]))
                .collect(),
        }
    }

    /// Exchange of the primed and unprimed indices.
    pub fn primed_swap(&self) -> Self {
        self.permuted([3, 4, 5, 0, 1, 2])
    }

    /// k ↔ n.
    pub fn swap_kn(&self) -> Self {
        self.permuted([2, 1, 0, 3, 4, 5])
    }

    /// k′ ↔ n′.
    pub fn swap_kn_primed(&self) -> Self {
        self.permuted([0, 1, 2, 5, 4, 3])
    }
}

#[derive(Debug, Clone)]
pub struct DeltaSet {
    /// 1-based label.
    pub label: usize,
    pub elements: Vec<DeltaProduct>,
}

impl DeltaSet {
    pub fn leader(&self) -> &DeltaProduct {
        &self.elements[0]
    }
}

/// The subset lists L1..L4 and the delta-product sets D1..D14.
#[derive(Debug, Clone)]
pub struct ContributionTables {
    pub l1: Vec<Partition>,
    pub l2: Vec<Partition>,
    pub l3: Vec<Partition>,
    pub l4: Partition,
    pub d_sets: Vec<DeltaSet>,
}

impl Default for ContributionTables {
    fn default() -> Self {
        Self::new()
    }
}

impl ContributionTables {
    pub fn new() -> Self {
        let l1 = L1
            .iter()
            .map(|c| c.iter().map(|b| mask(b)).collect())
            .collect();
        let l2 = L2
            .iter()
            .map(|c| c.iter().map(|b| mask(b)).collect())
            .collect();
        let l3 = L3.iter().map(|(p, q)| vec![mask(p), mask(q)]).collect();
        let l4 = vec![mask(&[1, 2, 3, 4, 5, 6])];
        let d_sets = D_SETS
            .iter()
            .enumerate()
            .map(|(i, set)| DeltaSet {
                label: i + 1,
                elements: set.iter().map(|e| DeltaProduct::parse(e)).collect(),
            })
            .collect();
        Self {
            l1,
            l2,
            l3,
            l4,
            d_sets,
        }
    }

    /// Every partition in L1..L4, i.e. all partitions without singletons.
    pub fn partitions(&self) -> Vec<Partition> {
        let mut all: Vec<Partition> = self.l1.clone();
        all.extend(self.l2.iter().cloned());
        all.extend(self.l3.iter().cloned());
        all.push(self.l4.clone());
        all
    }

    /// The delta set containing an element with the same key.
    pub fn classify(&self, key: &[Form]) -> Option<usize> {
        self.d_sets
            .iter()
            .find(|d| d.elements.iter().any(|e| e.key() == key))
            .map(|d| d.label)
    }

    pub fn d(&self, label: usize) -> &DeltaSet {
        &self.d_sets[label - 1]
    }

    /// The leader of the set that defines Q_l.
    pub fn q_leader(&self, l: usize) -> &DeltaProduct {
        self.d(Q_LEADERS[l - 1]).leader()
    }
}

/// All set partitions of {0..n−1} as block bitmasks (restricted growth strings).
pub fn set_partitions(n: usize) -> Vec<Vec<u32>> {
    fn rec(i: usize, n: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<u32>>) {
        if i == n {
            let nb = labels.iter().max().map_or(0, |m| m + 1);
            let mut blocks = vec![0u32; nb];
            for (pos, &l) in labels.iter().enumerate() {
                blocks[l] |= 1 << pos;
            }
            out.push(blocks);
            return;
        }
        let next = labels.iter().max().map_or(0, |m| m + 1);
        for l in 0..=next {
            labels.push(l);
            rec(i + 1, n, labels, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::with_capacity(n), &mut out);
    out
}
