//! Subcommand implementations: each builds the rows of one CSV, with an
//! optional companion plot.

use crate::config::{resolve_function_2d, resolve_function_3d, Config};
use crate::output::{write_csv, write_svg, Cell, Plot};
use crate::CliError;
use sobosvd::bounds::{
    check_hosvd_peel_bounds, check_mix_truncation_bounds, check_mixed_hosvd_bounds,
    check_singular_value_identity, check_tail_inequalities, check_tensor_projection_bounds,
    BoundReport, BoundRow, PeelOrder,
};
use sobosvd::expsum::{build_expsum, scan_scaling_error, separable_representation};
use sobosvd::fourier::{analyze2, analyze3, Coeffs2D, SobolevWeight};
use sobosvd::poisson::convergence_experiment;
use sobosvd::projections::{errors_vs_rank_with, Method};
use sobosvd::svd::{hosvd3, weighted_svd, HosvdFamily, SingularSystem, SvdVariant};
use std::path::PathBuf;

fn analyze_tagged(cfg: &Config) -> Result<Coeffs2D, CliError> {
    let f = resolve_function_2d(&cfg.function).map_err(CliError::Usage)?;
    Ok(analyze2(|x, y| f.eval(x, y), cfg.n, cfg.q)?)
}

fn three_systems(
    c: &Coeffs2D,
) -> Result<(SingularSystem, SingularSystem, SingularSystem), CliError> {
    Ok((
        weighted_svd(c, SvdVariant::L2L2)?,
        weighted_svd(c, SvdVariant::H1L2)?,
        weighted_svd(c, SvdVariant::L2H1)?,
    ))
}

pub fn run_svd_report(cfg: &Config) -> Result<PathBuf, CliError> {
    let c = analyze_tagged(cfg)?;
    let (s00, s10, s01) = three_systems(&c)?;
    let rmax = cfg.rmax.unwrap_or(c.size());
    let report = errors_vs_rank_with(&c, &s00, &s10, &s01, rmax)?;

    let sigma_at = |s: &SingularSystem, r: usize| s.sigma.get(r - 1).copied().unwrap_or(0.0);
    let mut rows = Vec::new();
    for r in 1..=rmax {
        let l2svd = report
            .rows_for(Method::L2Svd)
            .find(|row| row.rank == r)
            .expect("rank row");
        let tens = report
            .rows_for(Method::TensorProject)
            .find(|row| row.rank == r)
            .expect("rank row");
        let opt = report
            .rows_for(Method::OptimalH1)
            .find(|row| row.rank == r)
            .expect("rank row");
        rows.push(vec![
            Cell::Int(r as i64),
            Cell::Float(sigma_at(&s00, r)),
            Cell::Float(sigma_at(&s10, r)),
            Cell::Float(sigma_at(&s01, r)),
            Cell::Float(l2svd.l2),
            Cell::Float(l2svd.h1),
            Cell::Float(tens.h1),
            Cell::Float(opt.h1),
            Cell::Float(l2svd.estimator),
        ]);
    }
    let header = [
        "r",
        "sigma00",
        "sigma10",
        "sigma01",
        "l2_err_l2svd",
        "h1_err_l2svd",
        "h1_err_tensorproj",
        "h1_err_optimal",
        "estimator_e",
    ];
    let path = cfg.out.join("svd_report.csv");
    write_csv(&path, &header, &rows)?;
    if cfg.plot {
        let series = (1..header.len())
            .map(|col| {
                (
                    header[col].to_string(),
                    rows.iter()
                        .map(|row| {
                            let x = match row[0] {
                                Cell::Int(v) => v as f64,
                                _ => f64::NAN,
                            };
                            let y = match row[col] {
                                Cell::Float(v) => v,
                                _ => f64::NAN,
                            };
                            (x, y)
                        })
                        .collect(),
                )
            })
            .collect();
        write_svg(
            &path.with_extension("svg"),
            &Plot {
                title: format!("singular values and errors: {} (n={})", cfg.function, cfg.n),
                x_label: "rank r".into(),
                series,
            },
        )?;
    }
    Ok(path)
}

fn bound_rows(report: &BoundReport) -> Vec<Vec<Cell>> {
    report.rows.iter().map(bound_row).collect()
}

fn bound_row(row: &BoundRow) -> Vec<Cell> {
    vec![
        Cell::Text(row.name.clone()),
        Cell::Int(row.rank as i64),
        Cell::Float(row.lower),
        Cell::Float(row.upper),
        Cell::Float(row.actual),
        Cell::Bool(row.satisfied),
        Cell::Float(row.slack_lower),
        Cell::Float(row.slack_upper),
    ]
}

pub fn run_bounds(cfg: &Config) -> Result<PathBuf, CliError> {
    let c = analyze_tagged(cfg)?;
    let (s00, s10, s01) = three_systems(&c)?;
    let s11 = weighted_svd(&c, SvdVariant::MixMix)?;
    let rmax = cfg.rmax.unwrap_or(8).min(c.size());

    let mut rows = Vec::new();
    rows.extend(bound_rows(&check_tail_inequalities(&s00, &s10, &s01, rmax)?));
    rows.extend(bound_rows(&check_singular_value_identity(
        &s00, &s10, &s01, rmax,
    )?));
    for r in 0..=rmax {
        rows.push(bound_row(&check_tensor_projection_bounds(&c, &s10, &s01, r)?));
        rows.push(bound_row(&check_mix_truncation_bounds(&c, &s11, r)?));
    }

    if cfg.d3 {
        let f3 = resolve_function_3d(&cfg.function).map_err(CliError::Usage)?;
        let t = analyze3(f3, cfg.n, cfg.q)?;
        let plain = hosvd3(&t, HosvdFamily::PlainH1)?;
        let mixed = hosvd3(&t, HosvdFamily::MixJ)?;
        for r in 1..=rmax.min(4) {
            for order in PeelOrder::all() {
                rows.push(bound_row(&check_hosvd_peel_bounds(&t, &plain, r, &order)?));
                rows.push(bound_row(&check_mixed_hosvd_bounds(&t, &mixed, r, &order)?));
            }
        }
    }

    let header = [
        "bound",
        "rank",
        "lower",
        "upper",
        "actual",
        "satisfied",
        "slack_lower",
        "slack_upper",
    ];
    let path = cfg.out.join("bounds.csv");
    write_csv(&path, &header, &rows)?;
    if cfg.plot {
        let collect = |col: usize| -> Vec<(f64, f64)> {
            rows.iter()
                .enumerate()
                .map(|(i, row)| {
                    let y = match row[col] {
                        Cell::Float(v) => v,
                        _ => f64::NAN,
                    };
                    (i as f64, y)
                })
                .collect()
        };
        write_svg(
            &path.with_extension("svg"),
            &Plot {
                title: format!("bound values: {} (n={})", cfg.function, cfg.n),
                x_label: "row index".into(),
                series: vec![
                    ("lower".into(), collect(2)),
                    ("upper".into(), collect(3)),
                    ("actual".into(), collect(4)),
                ],
            },
        )?;
    }

    // nonzero exit with the offending row echoed
    for (row, cells) in report_rows(&rows) {
        if !row {
            let rendered: Vec<String> = cells
                .iter()
                .map(|c| match c {
                    Cell::Text(s) => s.clone(),
                    Cell::Int(v) => v.to_string(),
                    Cell::Float(v) => format!("{v:.6e}"),
                    Cell::Bool(b) => b.to_string(),
                })
                .collect();
            return Err(CliError::Violation(format!(
                "bound violated: {}",
                rendered.join(",")
            )));
        }
    }
    Ok(path)
}

fn report_rows(rows: &[Vec<Cell>]) -> impl Iterator<Item = (bool, &Vec<Cell>)> {
    rows.iter().map(|cells| {
        let ok = matches!(cells[5], Cell::Bool(true));
        (ok, cells)
    })
}

pub fn run_poisson(cfg: &Config) -> Result<PathBuf, CliError> {
    let f = resolve_function_2d(&cfg.function).map_err(CliError::Usage)?;
    let max_n = cfg.ns.iter().copied().max().unwrap_or(8);
    let n_ref = 4 * max_n;
    let runs = convergence_experiment(|x, y| f.eval(x, y), &cfg.ns, cfg.q, n_ref)?;
    let rows: Vec<Vec<Cell>> = runs
        .iter()
        .map(|r| {
            vec![
                Cell::Int(r.n as i64),
                Cell::Float(r.reference_error),
                Cell::Float(r.final_error),
                Cell::Int(r.rank as i64),
                Cell::Float(r.estimator),
                Cell::Float(r.truncation_error),
                Cell::Float(r.final_error / r.reference_error),
            ]
        })
        .collect();
    let header = [
        "n",
        "reference_error",
        "final_error",
        "rank",
        "estimator",
        "truncation_error",
        "ratio",
    ];
    let path = cfg.out.join("poisson.csv");
    write_csv(&path, &header, &rows)?;
    if cfg.plot {
        let pairs = |sel: fn(&sobosvd::poisson::GalerkinRun) -> f64| -> Vec<(f64, f64)> {
            runs.iter().map(|r| (r.n as f64, sel(r))).collect()
        };
        write_svg(
            &path.with_extension("svg"),
            &Plot {
                title: format!("Galerkin truncation: {}", cfg.function),
                x_label: "discretization level n".into(),
                series: vec![
                    ("reference_error".into(), pairs(|r| r.reference_error)),
                    ("final_error".into(), pairs(|r| r.final_error)),
                ],
            },
        )?;
    }
    Ok(path)
}

pub fn run_expsum(cfg: &Config) -> Result<PathBuf, CliError> {
    let c = analyze_tagged(cfg)?;
    let n = cfg.n;
    let t_max = 1.0 + 2.0 * (n * n) as f64;
    let e = build_expsum(t_max, cfg.delta)?;
    let lattice = scan_scaling_error(&e, n)?;
    let h1 = c.norm(SobolevWeight::FullH1)?;
    let rmax = cfg.rmax.unwrap_or(5).min(c.size()).max(1);

    let mut rows = Vec::new();
    for r in 1..=rmax {
        let rep = separable_representation(&c, &e, r)?;
        let err = c.sub(&rep.assemble()?)?.norm(SobolevWeight::FullH1)?;
        rows.push(vec![
            Cell::Int(r as i64),
            Cell::Int(e.term_count() as i64),
            Cell::Int(rep.term_count() as i64),
            Cell::Float(cfg.delta),
            Cell::Float(e.achieved),
            Cell::Float(lattice),
            Cell::Float(err),
            Cell::Float(rep.truncation_tail + cfg.delta * h1),
            Cell::Int((r * n * 2 * e.term_count()) as i64),
        ]);
    }
    let header = [
        "r",
        "p",
        "terms",
        "delta_target",
        "delta_achieved",
        "lattice_scan_error",
        "h1_error",
        "h1_budget",
        "complexity_rn2p",
    ];
    let path = cfg.out.join("expsum.csv");
    write_csv(&path, &header, &rows)?;
    if cfg.plot {
        let col = |idx: usize| -> Vec<(f64, f64)> {
            rows.iter()
                .map(|row| {
                    let x = match row[0] {
                        Cell::Int(v) => v as f64,
                        _ => f64::NAN,
                    };
                    let y = match row[idx] {
                        Cell::Float(v) => v,
                        _ => f64::NAN,
                    };
                    (x, y)
                })
                .collect()
        };
        write_svg(
            &path.with_extension("svg"),
            &Plot {
                title: format!("separable representation: {} (n={})", cfg.function, n),
                x_label: "rank r".into(),
                series: vec![
                    ("h1_error".into(), col(6)),
                    ("h1_budget".into(), col(7)),
                ],
            },
        )?;
    }
    Ok(path)
}

pub fn run_pathology(cfg: &Config) -> Result<PathBuf, CliError> {
    let rows_data = sobosvd::pathology::demo_unbounded(&cfg.ns)?;
    let rows: Vec<Vec<Cell>> = rows_data
        .iter()
        .map(|r| {
            vec![
                Cell::Int(r.n as i64),
                Cell::Float(r.v_l2),
                Cell::Float(r.projected_h1),
                Cell::Float(r.ratio),
                Cell::Float(r.tensor_h1_bound),
                Cell::Float(r.projected_tensor_01),
            ]
        })
        .collect();
    let header = [
        "n",
        "v_l2",
        "projected_h1",
        "ratio",
        "tensor_h1_bound",
        "projected_tensor_01",
    ];
    let path = cfg.out.join("pathology.csv");
    write_csv(&path, &header, &rows)?;
    if cfg.plot {
        let pairs = |sel: fn(&sobosvd::pathology::UnboundedRow) -> f64| -> Vec<(f64, f64)> {
            rows_data.iter().map(|r| (r.n as f64, sel(r))).collect()
        };
        write_svg(
            &path.with_extension("svg"),
            &Plot {
                title: "unbounded projection demonstration".into(),
                x_label: "spike index n".into(),
                series: vec![
                    ("v_l2".into(), pairs(|r| r.v_l2)),
                    ("projected_h1".into(), pairs(|r| r.projected_h1)),
                    ("tensor_h1_bound".into(), pairs(|r| r.tensor_h1_bound)),
                    ("projected_tensor_01".into(), pairs(|r| r.projected_tensor_01)),
                ],
            },
        )?;
    }
    Ok(path)
}

pub fn run_hosvd3(cfg: &Config) -> Result<PathBuf, CliError> {
    let f3 = resolve_function_3d(&cfg.function).map_err(CliError::Usage)?;
    let t = analyze3(f3, cfg.n, cfg.q)?;
    let plain = hosvd3(&t, HosvdFamily::PlainH1)?;
    let mixed = hosvd3(&t, HosvdFamily::MixJ)?;

    let mut rows = Vec::new();
    for mode in 0..3 {
        let depth = plain[mode].rank().max(mixed[mode].rank());
        for k in 0..depth {
            rows.push(vec![
                Cell::Int((mode + 1) as i64),
                Cell::Int((k + 1) as i64),
                Cell::Float(plain[mode].sigma.get(k).copied().unwrap_or(0.0)),
                Cell::Float(mixed[mode].sigma.get(k).copied().unwrap_or(0.0)),
            ]);
        }
    }
    let header = ["mode", "k", "sigma_h1", "sigma_mixj"];
    let path = cfg.out.join("hosvd3.csv");
    write_csv(&path, &header, &rows)?;
    if cfg.plot {
        let mut series = Vec::new();
        for mode in 0..3usize {
            for (name, sys) in [("h1", &plain[mode]), ("mixj", &mixed[mode])] {
                series.push((
                    format!("mode{}_{name}", mode + 1),
                    sys.sigma
                        .iter()
                        .enumerate()
                        .map(|(k, &s)| ((k + 1) as f64, s))
                        .collect(),
                ));
            }
        }
        write_svg(
            &path.with_extension("svg"),
            &Plot {
                title: format!("per-mode spectra: {} (n={})", cfg.function, cfg.n),
                x_label: "index k".into(),
                series,
            },
        )?;
    }
    Ok(path)
}
