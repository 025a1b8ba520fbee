//! Minimal block length and the feed cap it implies.
//!
//! cargo run --example ncu_capacity

use kerf::kinematics::{block_feed_cap, min_block_length};

fn main() {
    let t_int = 0.012;
    println!("programmed feed -> shortest processable block (t_int = {t_int} s)");
    for f_mm_min in [1000.0, 5000.0, 10_000.0, 20_000.0, 30_000.0] {
        let l = min_block_length(f_mm_min / 60.0, t_int);
        println!("  F{f_mm_min:<6} -> L = {:.3} mm", l.mm());
    }

    println!("\nblock length -> highest sustainable feed");
    for len in [0.1, 0.5, 1.0, 2.0, 3.0, 5.0] {
        let cap = block_feed_cap(len, t_int);
        let programmed = 10_000.0 / 60.0;
        let reduction = (100.0 * (1.0 - cap / programmed)).max(0.0);
        println!("  {len:>3} mm -> {:>7.2} mm/s ({:>5.0} mm/min), {reduction:>4.1}% below F10000", cap, cap * 60.0);
    }
}
