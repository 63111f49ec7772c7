use secluded::digraph::Digraph;
use secluded::recursive::{solve_tsscs, RecursiveConfig};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn main() {
    let mut rng = StdRng::seed_from_u64(53);
    for round in 0..40 {
        let n = rng.gen_range(3..=7);
        let mut g = Digraph::new();
        for v in 0..n {
            g.add_vertex(v, rng.gen_range(1..=4)).unwrap();
        }
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.gen_bool(0.3) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let k = rng.gen_range(0..=2);
        eprintln!("round {round} n {n} k {k} starting");
        let (sol, stats) = solve_tsscs(&g, 0, k, &RecursiveConfig::default()).unwrap();
        eprintln!("round {round} done: {:?} stats {:?}", sol.map(|s| s.weight), stats);
    }
}
