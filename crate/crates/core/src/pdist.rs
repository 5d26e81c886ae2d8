//! The p-distance of block sizes and modules.
//!
//! A move replaces `x ∈ [2, p-1]` by `p - x` or `p - x + 1`; the distance of
//! `x` is the least number of moves reaching `{1, p}`. The distance of a
//! module is the maximum over its invariants.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exactlin::Fp;
use crate::kmod::Invariants;

/// Distances for every `x ∈ [1, p]`, computed as BFS distance from `{1, p}`
/// along reversed moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeTable {
    p: usize,
    /// index 0 unused
    values: Vec<usize>,
}

impl SizeTable {
    pub fn new(field: Fp) -> Self {
        let p = field.p_usize();
        let mut values = vec![usize::MAX; p + 1];
        let mut queue = VecDeque::new();
        for t in [1, p] {
            values[t] = 0;
            queue.push_back(t);
        }
        while let Some(y) = queue.pop_front() {
            // x moves to y when y = p - x or y = p - x + 1
            for x in [p.checked_sub(y), (p + 1).checked_sub(y)]
                .into_iter()
                .flatten()
            {
                if (2..p).contains(&x) && values[x] == usize::MAX {
                    values[x] = values[y] + 1;
                    queue.push_back(x);
                }
            }
        }
        debug_assert!(values[1..].iter().all(|&v| v != usize::MAX));
        Self { p, values }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn get(&self, x: usize) -> Result<usize> {
        if x == 0 || x > self.p {
            return Err(Error::OutOfRange {
                x,
                p: self.p as u32,
                reason: "block sizes lie in [1, p]",
            });
        }
        Ok(self.values[x])
    }

    pub fn max(&self) -> usize {
        self.values[1..].iter().copied().max().unwrap_or(0)
    }
}

pub fn size_int(field: Fp, x: usize) -> Result<usize> {
    SizeTable::new(field).get(x)
}

/// Maximum distance over the parts; 0 for the zero module.
pub fn size_module(inv: &Invariants) -> usize {
    let table = SizeTable::new(inv.field());
    inv.parts()
        .iter()
        .map(|&x| table.get(x).expect("parts are in range"))
        .max()
        .unwrap_or(0)
}

/// The move `x → x'` that lowers the distance by one, returned as
/// `(x', ε)` with `x = p + ε - x'`.
pub fn predecessor(field: Fp, x: usize) -> Result<(usize, usize)> {
    let p = field.p_usize();
    if !(2..p).contains(&x) {
        return Err(Error::OutOfRange {
            x,
            p: p as u32,
            reason: "only sizes in [2, p-1] have a predecessor",
        });
    }
    let table = SizeTable::new(field);
    let target = table.get(x)? - 1;
    let (a, b) = (p - x, p - x + 1);
    let (sa, sb) = (table.get(a)?, table.get(b)?);
    debug_assert_ne!(sa, sb, "the two moves never tie");
    let x_prime = if sa == target { a } else { b };
    debug_assert_eq!(table.get(x_prime)?, target);
    Ok((x_prime, x + x_prime - p))
}

/// The permutation dimension of `C_p`: the largest distance of any block size.
pub fn group_ppdim(field: Fp) -> usize {
    SizeTable::new(field).max()
}

/// The chain `1, p-1, 2, p-2, ..`, ending at `(p+1)/2`, in which position
/// `i` holds the unique size at distance `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainDiagram {
    p: usize,
    entries: Vec<usize>,
}

impl ChainDiagram {
    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph chain_p{} {{", self.p);
        let _ = writeln!(s, "  rankdir=LR;");
        for (i, x) in self.entries.iter().enumerate() {
            let _ = writeln!(s, "  n{x} [label=\"{x} (size {i})\"];");
        }
        for w in self.entries.windows(2) {
            let _ = writeln!(s, "  n{} -- n{};", w[0], w[1]);
        }
        s.push_str("}\n");
        s
    }
}

pub fn chain_diagram(field: Fp) -> ChainDiagram {
    let p = field.p_usize();
    let mut entries = vec![1];
    if p > 2 {
        let last = (p + 1) / 2;
        // alternately subtract from p and from p + 1
        let mut x = 1;
        let mut step = 0;
        while x != last {
            x = if step % 2 == 0 { p - x } else { p + 1 - x };
            entries.push(x);
            step += 1;
        }
    }
    ChainDiagram { p, entries }
}
