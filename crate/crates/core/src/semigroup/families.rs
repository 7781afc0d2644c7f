//! Small-semigroup families for exhaustive and randomized test sweeps.
//!
//! Orders 1–3 are cheap enough to enumerate outright (3⁹ candidate tables at
//! order 3); order-4 coverage comes from transition semigroups of random
//! three-state, two-letter automata instead, since exhausting 4¹⁶ tables is
//! not.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{from_transformations, Semigroup};

fn is_associative(table: &[Vec<usize>]) -> bool {
    let n = table.len();
    for x in 0..n {
        for y in 0..n {
            let xy = table[x][y];
            for z in 0..n {
                if table[xy][z] != table[x][table[y][z]] {
                    return false;
                }
            }
        }
    }
    true
}

fn index_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Every associative multiplication table of order 1, 2, or 3:
/// 1 + 8 + 113 = 122 semigroups, in table-code order within each order.
pub fn all_semigroups_up_to_order_3() -> Vec<Semigroup> {
    let mut out = Vec::new();
    for n in 1..=3usize {
        let cells = (n * n) as u32;
        for code in 0..n.pow(cells) {
            let mut rest = code;
            let mut table = vec![vec![0usize; n]; n];
            for row in table.iter_mut() {
                for cell in row.iter_mut() {
                    *cell = rest % n;
                    rest /= n;
                }
            }
            if is_associative(&table) {
                out.push(Semigroup::from_table_unchecked(table, index_names(n)));
            }
        }
    }
    out
}

/// Draws transition semigroups of random three-state automata over a
/// two-letter alphabet, keeping those of exactly the requested order.
/// Deterministic for a fixed seed; repeats are possible.
///
/// Panics if the requested order is not hit often enough (orders 1–4 all
/// occur at usable rates; anything above 27 never does).
pub fn transition_semigroups_of_order(order: usize, count: usize, seed: u64) -> Vec<Semigroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        assert!(
            attempts <= 1_000_000,
            "no order-{order} transition semigroup in {attempts} random automata"
        );
        let a: Vec<usize> = (0..3).map(|_| rng.gen_range(0..3)).collect();
        let b: Vec<usize> = (0..3).map(|_| rng.gen_range(0..3)).collect();
        let closure = from_transformations(&[('a', a), ('b', b)]).expect("generators are total");
        if closure.semigroup.order() == order {
            out.push(closure.semigroup);
        }
    }
    out
}
