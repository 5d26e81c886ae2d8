use std::collections::{HashMap, VecDeque};

use ppdim::exactlin::{is_prime, Fp};
use ppdim::kmod::Invariants;
use ppdim::pdist::{chain_diagram, group_ppdim, predecessor, size_int, size_module, SizeTable};

fn primes() -> impl Iterator<Item = u64> {
    (2..=97).filter(|&n| is_prime(n))
}

/// Distances by walking the moves backwards from both endpoints.
fn reverse_bfs(p: usize) -> HashMap<usize, usize> {
    let mut dist = HashMap::from([(1, 0), (p, 0)]);
    let mut queue = VecDeque::from([1, p]);
    while let Some(y) = queue.pop_front() {
        // x -> p - x and x -> p - x + 1, so y is reached from p - y and p + 1 - y
        for x in [p.checked_sub(y), (p + 1).checked_sub(y)]
            .into_iter()
            .flatten()
        {
            if (1..=p).contains(&x) && !dist.contains_key(&x) {
                dist.insert(x, dist[&y] + 1);
                queue.push_back(x);
            }
        }
    }
    dist
}

#[test]
fn table_matches_reverse_search() {
    for p in primes() {
        let f = Fp::new(p).unwrap();
        let table = SizeTable::new(f);
        let dist = reverse_bfs(p as usize);
        for x in 1..=p as usize {
            assert_eq!(table.get(x).unwrap(), dist[&x], "p = {p}, x = {x}");
        }
    }
}

#[test]
fn predecessor_lowers_size_by_one() {
    for p in primes().filter(|&p| p > 2) {
        let f = Fp::new(p).unwrap();
        for x in 2..p as usize {
            let (xp, eps) = predecessor(f, x).unwrap();
            assert!(eps <= 1);
            assert_eq!(x + xp, p as usize + eps);
            assert_eq!(size_int(f, xp).unwrap() + 1, size_int(f, x).unwrap());
        }
    }
}

#[test]
fn chain_lists_each_size_once() {
    for p in primes() {
        let f = Fp::new(p).unwrap();
        let chain = chain_diagram(f);
        let mut sorted = chain.entries().to_vec();
        sorted.sort();
        let want: Vec<usize> = if p == 2 {
            vec![1]
        } else {
            (1..p as usize).collect()
        };
        assert_eq!(sorted, want);
        for (i, &x) in chain.entries().iter().enumerate() {
            assert_eq!(size_int(f, x).unwrap(), i);
        }
        assert_eq!(chain.entries().len() - 1, group_ppdim(f));
    }
}

#[test]
fn module_size_is_max_over_parts() {
    let f = Fp::new(7).unwrap();
    for d in 1..=9 {
        for inv in Invariants::all_of_dim(f, d) {
            let want = inv
                .parts()
                .iter()
                .map(|&x| size_int(f, x).unwrap())
                .max()
                .unwrap();
            assert_eq!(size_module(&inv), want);
        }
    }
    assert_eq!(size_module(&Invariants::zero(f)), 0);
}

#[test]
fn dot_output_shape() {
    let dot = chain_diagram(Fp::new(5).unwrap()).to_dot();
    assert!(dot.starts_with("graph chain_p5 {"));
    assert_eq!(dot.matches(" -- ").count(), 3);
    assert!(dot.trim_end().ends_with('}'));
}

#[test]
fn out_of_range_inputs() {
    let f = Fp::new(5).unwrap();
    assert!(size_int(f, 0).is_err());
    assert!(size_int(f, 6).is_err());
    assert!(predecessor(f, 1).is_err());
    assert!(predecessor(f, 5).is_err());
}
