use std::f64::consts::PI;

use metascreen::boundary::BubbleGeometry;
use metascreen::lattice_green::*;
use metascreen::resonance::*;
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;

use crate::config::RunConfig;
use crate::output::{Artifact, Cell, Table};
use crate::CliError;

pub fn green_eval(cfg: &RunConfig, oracle: bool) -> Result<Artifact, CliError> {
    let lattice = cfg.lattice()?;
    let mode = WaveMode::new(cfg.green.k, cfg.green.k_par)?;
    let y = cfg.green_source();
    let ewald = Evaluator::Ewald(cfg.ewald);
    let reference = Evaluator::Direct {
        terms: DEFAULT_DIRECT_TERMS,
        windowed: true,
    };
    let rows: Vec<Vec<Cell>> = cfg
        .green
        .points
        .par_iter()
        .map(|&[px, pz]| {
            let x = Point2::new(px, pz);
            match green_dirichlet(&lattice, &mode, x, y, &ewald) {
                Ok(g) => {
                    let err = if oracle {
                        green_dirichlet(&lattice, &mode, x, y, &reference)
                            .map(|r| (r - g).norm())
                            .unwrap_or(f64::NAN)
                    } else {
                        f64::NAN
                    };
                    vec![
                        px.into(),
                        pz.into(),
                        g.re.into(),
                        g.im.into(),
                        "ewald".into(),
                        err.into(),
                        "".into(),
                    ]
                }
                Err(e) => vec![
                    px.into(),
                    pz.into(),
                    f64::NAN.into(),
                    f64::NAN.into(),
                    "ewald".into(),
                    f64::NAN.into(),
                    e.to_string().into(),
                ],
            }
        })
        .collect();
    let mut table = Table::new(vec![
        "x",
        "z",
        "re",
        "im",
        "evaluator",
        "oracle_error",
        "error",
    ]);
    rows.into_iter().for_each(|r| table.push(r));
    Ok(Artifact {
        name: "green",
        summary: None,
        table: Some(table),
    })
}

fn base_report(cfg: &RunConfig) -> Result<ResonanceReport, CliError> {
    Ok(analyze(
        &cfg.screen.bubble,
        &cfg.lattice()?,
        &cfg.media,
        cfg.nodes,
        &cfg.ewald,
        None,
    )?)
}

pub fn resonance(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let report = base_report(cfg)?;
    Ok(Artifact {
        name: "resonance",
        summary: Some(serde_json::to_value(&report).map_err(|e| CliError::Io(e.to_string()))?),
        table: None,
    })
}

pub fn char_search(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let lattice = cfg.lattice()?;
    let wm = base_report(cfg)?.omega_m;
    let [lo, hi] = cfg.search.window;
    let options = cfg.search.options();
    let report = analyze(
        &cfg.screen.bubble,
        &lattice,
        &cfg.media,
        cfg.nodes,
        &cfg.ewald,
        Some((cfg.theta, (lo * wm, hi * wm), &options)),
    )?;
    let mut table = Table::new(vec!["omega", "sigma_min"]);
    for s in &report.sv_curve {
        table.push(vec![s.omega.into(), s.sigma_min.into()]);
    }
    let mut summary = serde_json::to_value(&report).map_err(|e| CliError::Io(e.to_string()))?;
    if let Some(obj) = summary.as_object_mut() {
        obj.remove("sv_curve");
        let wc = report.omega_c.unwrap_or(f64::NAN);
        obj.insert(
            "relative_gap".into(),
            json!((wc - report.omega_m) / report.omega_m),
        );
    }
    Ok(Artifact {
        name: "char_search",
        summary: Some(summary),
        table: Some(table),
    })
}

pub fn reflection_sweep(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let lattice = cfg.lattice()?;
    let bdy = cfg.screen.bubble.discretize(cfg.nodes)?;
    let st = static_constants(&bdy, &lattice, &cfg.ewald)?;
    let wm = minnaert_frequency(st.capacity, st.area, &cfg.media)?;
    let omegas: Vec<f64> = if cfg.sweep.omega.is_empty() {
        (0..=200).map(|i| wm * (0.5 + i as f64 / 200.0)).collect()
    } else {
        cfg.sweep.omega.clone()
    };
    let threshold = 2.0 * PI / (cfg.screen.period * (1.0 + cfg.theta.cos().abs()));
    let mut table = Table::new(vec!["omega", "re", "im", "abs", "phase", "eta_rad"]);
    for &w in &omegas {
        if w / cfg.media.v() >= threshold {
            return Err(metascreen::Error::UnsupportedRegime(format!(
                "omega = {w} is above the first diffraction threshold"
            ))
            .into());
        }
        let eta = eta_rad(w, cfg.theta, &st, &cfg.media);
        let r: Complex64 = reflection(w, wm, eta, &cfg.damping);
        table.push(vec![
            w.into(),
            r.re.into(),
            r.im.into(),
            r.norm().into(),
            r.arg().into(),
            eta.into(),
        ]);
    }
    Ok(Artifact {
        name: "reflection",
        summary: Some(
            json!({ "omega_m": wm, "capacity": st.capacity, "m1": st.m1, "eta_other": cfg.damping.eta_other }),
        ),
        table: Some(table),
    })
}

pub fn trends(cfg: &RunConfig) -> Result<Artifact, CliError> {
    let (radius, standoff) = (cfg.sweep.radius.clone(), cfg.sweep.standoff.clone());
    let base = cfg.screen.bubble;
    let base_radius = match base.shape {
        metascreen::boundary::Shape::Circle { radius } => Some(radius),
        _ => None,
    };
    if base_radius.is_none() && !radius.is_empty() {
        return Err(CliError::Config(
            "a radius sweep requires a circular bubble".into(),
        ));
    }
    let or = |v: &Vec<f64>, d: f64| if v.is_empty() { vec![d] } else { v.clone() };
    let periods = or(&cfg.sweep.period, cfg.screen.period);
    let radii = or(&radius, base_radius.unwrap_or(f64::NAN));
    let standoffs = or(&standoff, base.standoff);
    let deltas = or(&cfg.sweep.delta, cfg.media.delta());

    let mut points = Vec::new();
    for &a in &periods {
        for &r in &radii {
            for &b in &standoffs {
                for &d in &deltas {
                    points.push((a, r, b, d));
                }
            }
        }
    }
    let rows: Vec<Vec<Cell>> = points
        .par_iter()
        .map(|&(a, r, b, d)| {
            let geometry = match base.shape {
                metascreen::boundary::Shape::Circle { .. } => BubbleGeometry::circle(r, b),
                shape => BubbleGeometry { shape, standoff: b },
            };
            let media = MediaConfig::from_contrast(d, cfg.media.v(), cfg.media.v_b());
            let result = Lattice::new(a)
                .and_then(|lat| analyze(&geometry, &lat, &media, cfg.nodes, &cfg.ewald, None));
            let head: Vec<Cell> = vec![a.into(), r.into(), b.into(), d.into()];
            match result {
                Ok(rep) => head
                    .into_iter()
                    .chain([
                        rep.capacity.into(),
                        rep.m1.into(),
                        rep.omega_m.into(),
                        "".into(),
                    ])
                    .collect(),
                Err(e) => head
                    .into_iter()
                    .chain([
                        f64::NAN.into(),
                        f64::NAN.into(),
                        f64::NAN.into(),
                        e.to_string().into(),
                    ])
                    .collect(),
            }
        })
        .collect();
    let mut table = Table::new(vec![
        "period", "radius", "standoff", "delta", "capacity", "m1", "omega_m", "error",
    ]);
    rows.into_iter().for_each(|r| table.push(r));
    Ok(Artifact {
        name: "trends",
        summary: None,
        table: Some(table),
    })
}

/// Fast end-to-end sanity checks; the table lists each check and whether it passed.
pub fn self_test(oracle: bool) -> Result<(Artifact, bool), CliError> {
    let mut table = Table::new(vec!["check", "value", "tolerance", "pass"]);
    let mut all = true;
    let mut record = |name: &str, value: f64, tol: f64| {
        let pass = value.abs() <= tol;
        all &= pass;
        table.push(vec![
            name.into(),
            value.into(),
            tol.into(),
            if pass { "yes" } else { "no" }.into(),
        ]);
    };

    let lat = Lattice::new(10.0)?;
    let mode = WaveMode::new(0.05, 0.02)?;
    let d = Point2::new(1.3, 2.1);
    let ewald = green_sharp(&lat, &mode, d, &Evaluator::Ewald(EwaldParams::default()))?;
    let spectral = green_spectral(&lat, &mode, d, spectral_modes_for(&lat, d.z, 1e-15))?;
    record("ewald_vs_spectral", (ewald - spectral).norm(), 1e-9);
    if oracle {
        let direct = green_direct_windowed(&lat, &mode, d, DEFAULT_DIRECT_TERMS)?;
        record("ewald_vs_direct", (ewald - direct).norm(), 1e-8);
    }

    // a small cylinder far from its neighbours: capacity of a circle over a grounded plane
    let rep = analyze(
        &BubbleGeometry::circle(0.1, 0.2),
        &Lattice::new(60.0)?,
        &MediaConfig::default(),
        64,
        &EwaldParams::default(),
        None,
    )?;
    let want = 2.0 * PI / 2f64.acosh();
    record("isolated_capacity_rel", (rep.capacity - want) / want, 2e-3);
    record("half_eigenvalue", rep.half_eigenvalue - 0.5, 1e-3);

    let none = DampingModel::default();
    let worst = (1..=100)
        .map(|i| (reflection(0.01 * i as f64, 0.37, 0.02 * i as f64, &none).norm() - 1.0).abs())
        .fold(0.0, f64::max);
    record("reflection_unimodular", worst, 1e-12);
    Ok((
        Artifact {
            name: "self_test",
            summary: None,
            table: Some(table),
        },
        all,
    ))
}
