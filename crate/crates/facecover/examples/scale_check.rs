use facecover::oracle::generate;
use facecover::{perfect_matching_cubic, MatchingEngine};
use std::time::Instant;

fn main() {
    let mut prev: Option<f64> = None;
    for n in [10_000usize, 100_000, 1_000_000] {
        let warm = generate::stacked_triangulation(n, 99).dual();
        perfect_matching_cubic(&warm, 0, MatchingEngine::Cubic).unwrap();
        let mut total_ns = 0.0;
        let mut total_vertices = 0.0;
        for seed in 1..=5u64 {
            let h = generate::stacked_triangulation(n, seed).dual();
            let forced = (seed as usize * 7919) % h.m();
            let mut best = f64::INFINITY;
            for _ in 0..2 {
                let t0 = Instant::now();
                let m = perfect_matching_cubic(&h, forced, MatchingEngine::Cubic).unwrap();
                let dt = t0.elapsed().as_nanos() as f64;
                assert!(!m.used_fallback);
                best = best.min(dt);
            }
            total_ns += best;
            total_vertices += h.n() as f64;
        }
        let avg = total_ns / total_vertices;
        let ratio = prev.map(|p| avg / p).unwrap_or(1.0);
        println!("n={n:>8} ns/vertex amortized={avg:>7.1} decade-ratio={ratio:.2}");
        prev = Some(avg);
    }
}
