use ansec::mc::{mc_capacities_with, mc_secrecy_rate_imperfect_with, McEstimate};
use ansec::power_opt::{
    critical_snr, optimize_phi_adaptive_with, optimize_phi_with, OptimizeOptions,
};
use ansec::secrecy::{secrecy_rate_imperfect, secrecy_rate_large_na};
use ansec::{CsiError, Execution, PowerSplit, SystemConfig};

use crate::error::CliError;
use crate::options::{Command, PhiChoice, RunSpec};
use crate::table::{num, num2, Table};

/// Largest deviation, in standard errors, that `validate` accepts.
pub const VALIDATE_Z: f64 = 3.0;

/// Output of one invocation. `ok` is false only when `validate` finds a
/// closed form outside tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: Table,
    pub ok: bool,
}

fn linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn db(p: f64) -> f64 {
    if p.is_infinite() {
        f64::INFINITY
    } else {
        10.0 * p.log10()
    }
}

struct Ctx {
    cfg: SystemConfig,
    csi: CsiError,
    exec: Execution,
}

impl Ctx {
    fn err(&self) -> Option<&CsiError> {
        (self.csi.sigma_tilde2() > 0.0).then_some(&self.csi)
    }

    fn split(&self, phi: PhiChoice, p: f64) -> PowerSplit {
        match phi {
            PhiChoice::Fixed(v) => PowerSplit::new(v).expect("validated"),
            PhiChoice::Optimal => {
                let opts = OptimizeOptions {
                    exec: self.exec,
                    ..Default::default()
                };
                PowerSplit::new(optimize_phi_with(&self.cfg, p, self.err(), &opts).phi_star)
                    .expect("phi in (0, 1)")
            }
        }
    }
}

pub fn run(spec: &RunSpec) -> Result<Outcome, CliError> {
    let ctx = Ctx {
        cfg: spec.system(),
        csi: spec.csi(),
        exec: if spec.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    };
    let table = match spec.command {
        Command::Rate => {
            if spec.snr_is_range {
                return Err(CliError::Usage(
                    "rate takes a single --snr-db value; use sweep for ranges".into(),
                ));
            }
            rates(spec, &ctx, false)
        }
        Command::Sweep => rates(spec, &ctx, true),
        Command::OptPhi if spec.dump_grid => opt_phi_grid(spec, &ctx),
        Command::OptPhi => opt_phi(spec, &ctx),
        Command::OptPhiAdaptive => opt_phi_adaptive(spec, &ctx)?,
        Command::CriticalSnr => critical(spec, &ctx)?,
        Command::Table1 => table1(spec)?,
        Command::Validate => return validate(spec, &ctx),
    };
    Ok(Outcome { table, ok: true })
}

fn rates(spec: &RunSpec, ctx: &Ctx, with_large_na: bool) -> Table {
    let mut header = vec![
        "na",
        "ne",
        "snr_db",
        "phi",
        "sigma_tilde2",
        "c1",
        "c2",
        "c",
        "source",
        "stderr",
    ];
    if with_large_na {
        header.push("c_large_na");
    }
    let mut table = Table::new(&header);
    let rows = ctx.exec.map_slice(&spec.snr_db, |&snr| {
        let p = linear(snr);
        let split = ctx.split(spec.phi, p);
        let r = secrecy_rate_imperfect(&ctx.cfg, p, &split, &ctx.csi);
        let mut row = vec![
            spec.na.to_string(),
            spec.ne.to_string(),
            num(snr),
            num(split.phi()),
            num(spec.sigma_tilde2),
            num(r.c1),
            num(r.c2),
            num(r.c),
            "closed-form".to_string(),
            String::new(),
        ];
        if with_large_na {
            // The large-array form assumes perfect channel knowledge.
            row.push(match ctx.err() {
                None => num(secrecy_rate_large_na(&ctx.cfg, p, &split).expect("split is valid")),
                Some(_) => String::new(),
            });
        }
        row
    });
    rows.into_iter().for_each(|r| table.push(r));
    table
}

fn opt_phi(spec: &RunSpec, ctx: &Ctx) -> Table {
    let mut table = Table::new(&[
        "na",
        "ne",
        "snr_db",
        "sigma_tilde2",
        "phi_star",
        "z_star",
        "c_star",
        "converged",
    ]);
    let opts = OptimizeOptions {
        exec: ctx.exec,
        ..Default::default()
    };
    let rows = ctx.exec.map_slice(&spec.snr_db, |&snr| {
        let r = optimize_phi_with(&ctx.cfg, linear(snr), ctx.err(), &opts);
        vec![
            spec.na.to_string(),
            spec.ne.to_string(),
            num(snr),
            num(spec.sigma_tilde2),
            num(r.phi_star),
            num(r.z_star),
            num(r.c_star),
            r.converged.to_string(),
        ]
    });
    rows.into_iter().for_each(|r| table.push(r));
    table
}

fn opt_phi_grid(spec: &RunSpec, ctx: &Ctx) -> Table {
    let mut table = Table::new(&["snr_db", "phi", "c1_minus_c2"]);
    let opts = OptimizeOptions {
        exec: ctx.exec,
        dump_grid: true,
        ..Default::default()
    };
    for &snr in &spec.snr_db {
        let r = optimize_phi_with(&ctx.cfg, linear(snr), ctx.err(), &opts);
        for (phi, gap) in r.grid.unwrap_or_default() {
            table.push(vec![num(snr), num(phi), num(gap)]);
        }
    }
    table
}

fn opt_phi_adaptive(spec: &RunSpec, ctx: &Ctx) -> Result<Table, CliError> {
    if ctx.err().is_some() {
        return Err(CliError::Usage(
            "opt-phi-adaptive assumes perfect channel knowledge (sigma-tilde2 = 0)".into(),
        ));
    }
    if spec.order < 16 {
        return Err(CliError::Usage(format!(
            "order = {} must be at least 16",
            spec.order
        )));
    }
    let mut table = Table::new(&[
        "na",
        "ne",
        "snr_db",
        "order",
        "c_adaptive",
        "c_fixed",
        "gap",
    ]);
    let opts = OptimizeOptions {
        exec: ctx.exec,
        ..Default::default()
    };
    let rows = ctx
        .exec
        .map_slice(&spec.snr_db, |&snr| -> Result<Vec<String>, CliError> {
            let p = linear(snr);
            let adaptive = optimize_phi_adaptive_with(&ctx.cfg, p, spec.order, ctx.exec)?;
            let fixed = optimize_phi_with(&ctx.cfg, p, None, &opts).c_star;
            Ok(vec![
                spec.na.to_string(),
                spec.ne.to_string(),
                num(snr),
                spec.order.to_string(),
                num(adaptive),
                num(fixed),
                num(adaptive - fixed),
            ])
        });
    for r in rows {
        table.push(r?);
    }
    Ok(table)
}

fn fixed_split(spec: &RunSpec, command: &str) -> Result<PowerSplit, CliError> {
    match spec.phi {
        PhiChoice::Fixed(v) => Ok(PowerSplit::new(v).expect("validated")),
        PhiChoice::Optimal => Err(CliError::Usage(format!("{command} needs a numeric --phi"))),
    }
}

fn critical(spec: &RunSpec, ctx: &Ctx) -> Result<Table, CliError> {
    let split = fixed_split(spec, "critical-snr")?;
    let r = critical_snr(&ctx.cfg, &split, ctx.err());
    let mut table = Table::new(&[
        "na",
        "ne",
        "phi",
        "sigma_tilde2",
        "critical_snr_db",
        "bound_db",
    ]);
    table.push(vec![
        spec.na.to_string(),
        spec.ne.to_string(),
        num(split.phi()),
        num(spec.sigma_tilde2),
        num(r.exact_db()),
        num(r.bound_db()),
    ]);
    Ok(table)
}

/// Antenna counts and error variances of the critical-SNR table.
pub const TABLE1_NA: [u32; 5] = [2, 4, 6, 8, 10];
pub const TABLE1_SIGMA_TILDE2: [f64; 3] = [0.0, 0.1, 0.2];

fn table1(spec: &RunSpec) -> Result<Table, CliError> {
    let split = fixed_split(spec, "table1")?;
    let mut table = Table::new(&["na", "sigma_tilde2", "kind", "critical_snr_db"]);
    for s2 in TABLE1_SIGMA_TILDE2 {
        let err = CsiError::new(s2).expect("table values are valid");
        let cells: Vec<_> = TABLE1_NA
            .iter()
            .map(|&na| {
                critical_snr(
                    &SystemConfig::new(na, 1).expect("na > 1"),
                    &split,
                    Some(&err),
                )
            })
            .collect();
        for (kind, pick) in [("exact", 0), ("bound", 1)] {
            for (na, c) in TABLE1_NA.iter().zip(&cells) {
                let v = if pick == 0 { c.p_c_exact } else { c.p_c_bound };
                table.push(vec![na.to_string(), num(s2), kind.to_string(), num2(db(v))]);
            }
        }
    }
    Ok(table)
}

fn check_row(snr: f64, quantity: &str, closed: f64, est: &McEstimate) -> (Vec<String>, bool) {
    let diff = (est.mean - closed).abs();
    let z = if diff == 0.0 { 0.0 } else { diff / est.stderr };
    let pass = z <= VALIDATE_Z;
    let row = vec![
        num(snr),
        quantity.to_string(),
        num(closed),
        num(est.mean),
        num(est.stderr),
        num(z),
        pass.to_string(),
    ];
    (row, pass)
}

fn validate(spec: &RunSpec, ctx: &Ctx) -> Result<Outcome, CliError> {
    let mut table = Table::new(&[
        "snr_db",
        "quantity",
        "closed_form",
        "mc_mean",
        "mc_stderr",
        "z_score",
        "pass",
    ]);
    let mut ok = true;
    for &snr in &spec.snr_db {
        let p = linear(snr);
        let split = ctx.split(spec.phi, p);
        let closed = secrecy_rate_imperfect(&ctx.cfg, p, &split, &CsiError::perfect());
        let mc = mc_capacities_with(&ctx.cfg, p, &split, spec.samples, spec.seed, ctx.exec)?;
        let mut checks = vec![
            check_row(snr, "c1", closed.c1, &mc.c1),
            check_row(snr, "c2", closed.c2, &mc.c2),
        ];
        if let Some(err) = ctx.err() {
            let cf = secrecy_rate_imperfect(&ctx.cfg, p, &split, err).c;
            let est = mc_secrecy_rate_imperfect_with(
                &ctx.cfg,
                p,
                &split,
                err,
                spec.samples,
                spec.seed,
                ctx.exec,
            )?;
            checks.push(check_row(snr, "c_imperfect", cf, &est));
        }
        for (row, pass) in checks {
            ok &= pass;
            table.push(row);
        }
        if mc.rejected > 0 {
            eprintln!(
                "snr_db {snr}: {} ill-conditioned draws resampled",
                mc.rejected
            );
        }
    }
    Ok(Outcome { table, ok })
}
