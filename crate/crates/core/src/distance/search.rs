//! Exact minimum-weight search for nontrivial logical vectors.
//!
//! A [`ColumnSet`] lists, for every coordinate, its syndrome column and its
//! logical class (pairings with a dual logical basis). A set of coordinates
//! is a hit when its syndromes cancel and its classes do not.

use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;

use crate::bits::Bits;

#[derive(Debug, Clone)]
pub struct ColumnSet {
    pub syndromes: Vec<Bits>,
    pub classes: Vec<u64>,
    /// When set to `n`, the set is invariant under the simultaneous cyclic
    /// shift of the two blocks `0..n` and `n..2n`, and the search only
    /// looks at supports whose smallest element is `0` or `n`.
    pub shift_block: Option<usize>,
}

impl ColumnSet {
    pub fn len(&self) -> usize {
        self.syndromes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syndromes.is_empty()
    }

    fn checks(&self) -> usize {
        self.syndromes.first().map_or(0, Bits::len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Pick by estimated work.
    #[default]
    Auto,
    /// Depth-first enumeration of supports by increasing weight.
    Exhaustive,
    /// Collision search over half-weight supports.
    MeetInMiddle,
}

/// Smallest support (sorted) of weight at most `w_max` with zero syndrome and
/// nonzero class, or `None` if there is none.
pub fn min_nontrivial(cols: &ColumnSet, w_max: usize, engine: Engine) -> Option<Vec<usize>> {
    let engine = match engine {
        Engine::Auto => choose_engine(cols, w_max),
        e => e,
    };
    if cols.checks() <= 128 {
        let keys: Vec<u128> = cols.syndromes.iter().map(pack).collect();
        run(cols, &keys, w_max, engine)
    } else {
        run(cols, &cols.syndromes, w_max, engine)
    }
}

fn run<K: Key>(cols: &ColumnSet, keys: &[K], w_max: usize, engine: Engine) -> Option<Vec<usize>> {
    match engine {
        Engine::MeetInMiddle => meet_in_middle(keys, &cols.classes, w_max),
        _ => exhaustive(keys, &cols.classes, cols.shift_block, w_max),
    }
}

const EXHAUSTIVE_BUDGET: f64 = 2e7;

fn choose_engine(cols: &ColumnSet, w_max: usize) -> Engine {
    let n = cols.len();
    let work: f64 = (1..=w_max)
        .map(|w| {
            if cols.shift_block.is_some() {
                2.0 * binomial(n, w.saturating_sub(2))
            } else {
                binomial(n, w - 1)
            }
        })
        .sum();
    if work <= EXHAUSTIVE_BUDGET {
        Engine::Exhaustive
    } else {
        Engine::MeetInMiddle
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn pack(b: &Bits) -> u128 {
    let w = b.words();
    let lo = w.first().copied().unwrap_or(0) as u128;
    let hi = w.get(1).copied().unwrap_or(0) as u128;
    lo | (hi << 64)
}

trait Key: Clone + Eq + Hash + Send + Sync {
    fn zero_like(&self) -> Self;
    fn xor(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Key for u128 {
    fn zero_like(&self) -> Self {
        0
    }
    fn xor(&self, other: &Self) -> Self {
        self ^ other
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

impl Key for Bits {
    fn zero_like(&self) -> Self {
        Bits::zeros(self.len())
    }
    fn xor(&self, other: &Self) -> Self {
        Bits::xor(self, other)
    }
    fn is_zero(&self) -> bool {
        Bits::is_zero(self)
    }
}

fn exhaustive<K: Key>(
    keys: &[K],
    classes: &[u64],
    shift_block: Option<usize>,
    w_max: usize,
) -> Option<Vec<usize>> {
    let n = keys.len();
    if n == 0 {
        return None;
    }
    let mut by_key: HashMap<K, Vec<usize>> = HashMap::new();
    for (j, k) in keys.iter().enumerate() {
        by_key.entry(k.clone()).or_default().push(j);
    }
    let firsts: Vec<usize> = match shift_block {
        Some(b) => vec![0, b],
        None => (0..n).collect(),
    };
    let ctx = Dfs {
        keys,
        classes,
        by_key: &by_key,
    };
    for w in 1..=w_max.min(n) {
        let hit = firsts.par_iter().find_map_first(|&f| {
            let mut chosen = vec![f];
            ctx.extend(&mut chosen, keys[f].clone(), classes[f], w - 1)
        });
        if hit.is_some() {
            return hit;
        }
    }
    None
}

struct Dfs<'a, K> {
    keys: &'a [K],
    classes: &'a [u64],
    by_key: &'a HashMap<K, Vec<usize>>,
}

impl<K: Key> Dfs<'_, K> {
    fn extend(&self, chosen: &mut Vec<usize>, syn: K, class: u64, remaining: usize) -> Option<Vec<usize>> {
        let last = *chosen.last().expect("nonempty");
        if remaining == 0 {
            return (syn.is_zero() && class != 0).then(|| chosen.clone());
        }
        if remaining == 1 {
            let cands = self.by_key.get(&syn)?;
            let start = cands.partition_point(|&j| j <= last);
            let j = cands[start..]
                .iter()
                .copied()
                .find(|&j| class ^ self.classes[j] != 0)?;
            let mut out = chosen.clone();
            out.push(j);
            return Some(out);
        }
        let n = self.keys.len();
        for j in last + 1..=n - remaining {
            chosen.push(j);
            let hit = self.extend(chosen, syn.xor(&self.keys[j]), class ^ self.classes[j], remaining - 1);
            chosen.pop();
            if hit.is_some() {
                return hit;
            }
        }
        None
    }
}

// Per syndrome: the lightest subset's class and weight, and the lightest
// weight among subsets of any other class.
#[derive(Clone, Copy)]
struct Slot {
    class: u64,
    w1: u8,
    w2: u8,
}

const NONE: u8 = u8::MAX;

fn meet_in_middle<K: Key>(keys: &[K], classes: &[u64], w_max: usize) -> Option<Vec<usize>> {
    let n = keys.len();
    if n == 0 {
        return None;
    }
    let half = w_max.div_ceil(2).min(n);
    let zero = keys[0].zero_like();
    let mut table: HashMap<K, Slot> = HashMap::new();
    table.insert(
        zero.clone(),
        Slot {
            class: 0,
            w1: 0,
            w2: NONE,
        },
    );
    let mut best: Option<(usize, K)> = None;
    let mut reached = 0;
    for size in 1..=half {
        reached = size;
        for_each_subset(keys, classes, size, &zero, &mut |_, syn, class| {
            let slot = table.entry(syn.clone()).or_insert(Slot {
                class,
                w1: size as u8,
                w2: NONE,
            });
            let partner = if slot.class != class { slot.w1 } else { slot.w2 };
            if partner != NONE {
                let total = size + partner as usize;
                if best.as_ref().is_none_or(|(b, _)| total < *b) {
                    best = Some((total, syn.clone()));
                }
            }
            if slot.class != class && slot.w2 == NONE {
                slot.w2 = size as u8;
            }
        });
        if let Some((b, _)) = &best {
            if *b <= 2 * size {
                break;
            }
        }
    }
    let (total, target) = best?;
    if total > w_max {
        return None;
    }
    Some(reconstruct(keys, classes, reached, &zero, &target, total))
}

fn reconstruct<K: Key>(
    keys: &[K],
    classes: &[u64],
    half: usize,
    zero: &K,
    target: &K,
    total: usize,
) -> Vec<usize> {
    let mut found: Vec<(u64, Vec<usize>)> = Vec::new();
    if target.is_zero() {
        found.push((0, Vec::new()));
    }
    for size in 1..=half {
        for_each_subset(keys, classes, size, zero, &mut |subset, syn, class| {
            if syn == target {
                found.push((class, subset.to_vec()));
            }
        });
    }
    let mut best: Option<Vec<usize>> = None;
    for (i, (ca, a)) in found.iter().enumerate() {
        for (cb, b) in &found[i + 1..] {
            if ca == cb {
                continue;
            }
            let mut sym: Vec<usize> = a.iter().chain(b).copied().collect();
            sym.sort_unstable();
            let mut support = Vec::with_capacity(sym.len());
            let mut k = 0;
            while k < sym.len() {
                if k + 1 < sym.len() && sym[k] == sym[k + 1] {
                    k += 2;
                } else {
                    support.push(sym[k]);
                    k += 1;
                }
            }
            if support.len() == total && best.as_ref().is_none_or(|b| support < *b) {
                best = Some(support);
            }
        }
    }
    best.expect("collision recorded during the search")
}

// Visits every subset of the given size in lexicographic order.
fn for_each_subset<K: Key, F: FnMut(&[usize], &K, u64)>(
    keys: &[K],
    classes: &[u64],
    size: usize,
    zero: &K,
    f: &mut F,
) {
    fn rec<K: Key, F: FnMut(&[usize], &K, u64)>(
        keys: &[K],
        classes: &[u64],
        start: usize,
        left: usize,
        chosen: &mut Vec<usize>,
        syn: &K,
        class: u64,
        f: &mut F,
    ) {
        if left == 0 {
            f(chosen, syn, class);
            return;
        }
        for j in start..=keys.len() - left {
            chosen.push(j);
            let s = syn.xor(&keys[j]);
            rec(keys, classes, j + 1, left - 1, chosen, &s, class ^ classes[j], f);
            chosen.pop();
        }
    }
    if size > keys.len() {
        return;
    }
    let mut chosen = Vec::with_capacity(size);
    rec(keys, classes, 0, size, &mut chosen, zero, 0, f);
}
