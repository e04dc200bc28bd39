use collapsi::deals::{initial_state, random_deal};
use collapsi::solver::{count_games, solve_score_with, solve_win_with, SolveOptions};
use rand::SeedableRng;
use std::time::Instant;
fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let deals: Vec<_> = (0..100).map(|_| random_deal(&mut rng)).collect();
    for memo in [false, true] {
        let mut times = vec![];
        for d in &deals {
            let t = Instant::now();
            let r = solve_score_with(
                &initial_state(d),
                SolveOptions {
                    memo,
                    principal_variation: false,
                },
            );
            times.push(t.elapsed().as_secs_f64() * 1000.0);
            std::hint::black_box(r);
        }
        times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        println!(
            "score memo={memo} median {:.2} ms max {:.2} total {:.1}",
            times[50],
            times[99],
            times.iter().sum::<f64>()
        );
        let mut times = vec![];
        for d in &deals {
            let t = Instant::now();
            let r = solve_win_with(
                &initial_state(d),
                SolveOptions {
                    memo,
                    principal_variation: false,
                },
            );
            times.push(t.elapsed().as_secs_f64() * 1000.0);
            std::hint::black_box(r);
        }
        times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        println!("win memo={memo} median {:.2} ms", times[50]);
    }
    let t = Instant::now();
    println!(
        "games {} in {:?}",
        count_games(&initial_state(&"A223/4A2J/3A23/J3A4".parse().unwrap())),
        t.elapsed()
    );
}
