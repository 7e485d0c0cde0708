// Driving the command-line front end from code and capturing its tables.

use entlife::cli::{emit_table, run_with, Format, ResultTable};

pub fn run_example() -> entlife::Result<()> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code =
        run_with(["entlife", "ghz", "scan", "--m-from", "2", "--m-to", "6", "--format", "csv"], &mut out, &mut err);
    println!("exit {code}\n{}", String::from_utf8_lossy(&out));

    let mut t = ResultTable::new("custom", &["M", "kappa_tau"]).param("source", "example");
    t.push(vec![2usize.into(), 0.5f64.ln().abs().into()]);
    print!("{}", emit_table(&t, Format::Json));
    Ok(())
}

#[allow(dead_code)]
fn main() -> entlife::Result<()> {
    run_example()
}
