//! Homodyne characterization of the fourteen squeezed thermal states.
//!
//! cargo run --release --example table1_characterization [-- M SEED]

use tomofid::data::STS_TABLE;
use tomofid::experiments::characterize_state;

fn main() -> tomofid::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: usize = args.next().map_or(7000, |a| a.parse().expect("M"));
    let seed: u64 = args.next().map_or(1, |a| a.parse().expect("seed"));

    println!("state  <dx2>         <dp2>         N_tot         s             mu            | quoted s, mu");
    for row in &STS_TABLE {
        let r = characterize_state(row.state, row.params(), m, seed)?;
        println!(
            "{:>5}  {:.2}±{:.2}     {:.2}±{:.2}     {:.2}±{:.2}     {:.2}±{:.2}     {:.2}±{:.2}     | {:.2}, {:.2}{}",
            r.state,
            r.vxx.value,
            r.vxx.err,
            r.vpp.value,
            r.vpp.err,
            r.n_tot.value,
            r.n_tot.err,
            r.s.value,
            r.s.err,
            r.mu.value,
            r.mu.err,
            row.s.value,
            row.mu.value,
            if r.nonclassical { "  nonclassical" } else { "" },
        );
    }
    Ok(())
}
