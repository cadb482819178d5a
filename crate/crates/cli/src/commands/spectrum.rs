use tauprec_core::flipped::{flipped_matrix_function, SpectralExample};
use tauprec_core::matfun::matrix_function_dense;
use tauprec_core::spectra::{compare_sorted, singular_values, symmetric_eigs};
use tauprec_core::symbols::{sample_symbol, FourierSymbol, SymbolGrid};

use super::check_dense;
use crate::config::RunConfig;
use crate::output::{num, CsvTable, Outputs};
use crate::CliError;

pub const DEFAULTS: &[(&str, &str)] = &[
    ("example", "polynomial"),
    ("size", "200"),
    ("mode", "eig"),
    ("eps", "0.5"),
];

pub fn example(cfg: &RunConfig) -> Result<SpectralExample, CliError> {
    let name = cfg.str("example");
    SpectralExample::parse(name).ok_or_else(|| {
        CliError::Usage(format!("unknown example {name:?}; expected one of {}", SpectralExample::NAMES.join(", ")))
    })
}

pub fn run(cfg: &RunConfig) -> Result<(Outputs, String), CliError> {
    let ex = example(cfg)?;
    let n: usize = cfg.get("size")?;
    let eps: f64 = cfg.get("eps")?;
    check_dense(n)?;
    let t = ex.toeplitz(n)?;
    let hf = FourierSymbol::compose(ex.h(), &ex.symbol(n));
    let (values, grid, samples) = match cfg.str("mode") {
        "eig" => {
            let ev = symmetric_eigs(&flipped_matrix_function(&ex.h(), &t)?)?;
            let grid = SymbolGrid::Symmetrized(n);
            let s: Vec<f64> = sample_symbol(&hf.symmetrized(), grid)?.iter().map(|z| z.re).collect();
            (ev, grid, s)
        }
        "svd" => {
            let sv = singular_values(&matrix_function_dense(&ex.h(), &t.to_dense_real())?)?;
            let grid = SymbolGrid::Circulant(n);
            let s: Vec<f64> = sample_symbol(&hf, grid)?.iter().map(|z| z.norm()).collect();
            (sv, grid, s)
        }
        m => return Err(CliError::Usage(format!("mode must be eig or svd, got {m:?}"))),
    };
    let descending = cfg.str("mode") == "svd";
    let mut paired: Vec<(f64, f64)> = grid.points().into_iter().zip(samples).collect();
    paired.sort_by(|a, b| if descending { b.1.total_cmp(&a.1) } else { a.1.total_cmp(&b.1) });
    let sorted: Vec<f64> = paired.iter().map(|p| p.1).collect();
    let cmp = compare_sorted(&values, &sorted, eps)?;

    let mut eigs = CsvTable::new("eigs", &["index", "value"]);
    for (i, v) in values.iter().enumerate() {
        eigs.push(vec![i.to_string(), num(*v)]);
    }
    let mut sym = CsvTable::new("symbol", &["index", "theta", "value"]);
    for (i, (theta, v)) in paired.iter().enumerate() {
        sym.push(vec![i.to_string(), num(*theta), num(*v)]);
    }
    let report = format!(
        "example = {}\nsize = {n}\nmode = {}\nmax_sorted_deviation = {:.6e}\neps = {eps}\noutliers = {}\n",
        ex.name(),
        cfg.str("mode"),
        cmp.max_deviation,
        cmp.outliers
    );
    let mut out = Outputs::default();
    out.csv("eigs.csv", &eigs);
    out.csv("symbol.csv", &sym);
    out.text("report.txt", report.clone());
    Ok((out, report))
}
