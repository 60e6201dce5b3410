use lgcy33_core::poly::Potential;
use lgcy33_core::window::{orlov_chern_closed, OrlovEngine};

#[test]
#[ignore]
fn chain_to_window_19() {
    let mut e = OrlovEngine::new(&Potential::fermat_split()).unwrap();
    for t in 1..=19i64 {
        let start = std::time::Instant::now();
        let ch = e.chern_of_window(t).unwrap();
        println!(
            "window {t}: rank {}, entries {}, {:?}",
            e.current().rank(),
            e.current().differential.num_entries(),
            start.elapsed()
        );
        assert_eq!(ch, orlov_chern_closed(t, 0, 0), "window {t}");
    }
}
