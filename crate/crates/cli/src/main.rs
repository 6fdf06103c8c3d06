//! `capfloat`: equilibria, force curves, menisci and region maps of a
//! floating horizontal cylinder, as CSV or JSON.

mod output;

use std::f64::consts::FRAC_PI_2;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use capfloat::equilibria::{asymptotic_critical_mass, SERIES_ANGLE_TOLERANCE};
use capfloat::model::DEFAULT_PSI_CUTOFF;
use capfloat::{
    classify_equilibria, critical_mass_ratio, height, interface_profile, region_map, run_suite, total_energy,
    total_force, AsymptoticRegime, DimensionlessParams, PhysicalParams, Stability, SuiteConfig, Window,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use output::{col, Format, Table};

#[derive(Parser)]
#[command(name = "capfloat", version, about = "Floating cylinder equilibria with surface tension")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Equilibrium wetting angles with stability and validity.
    Equilibria {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Force, energy and height sampled over the wetting angle.
    Curves {
        #[command(flatten)]
        params: ParamArgs,
        /// Number of wetting angles on [0, pi].
        #[arg(long, default_value_t = 181)]
        resolution: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Right-hand meniscus shape.
    Profile {
        #[command(flatten)]
        params: ParamArgs,
        /// Wetting angle; defaults to the stable valid equilibrium.
        #[arg(long, allow_hyphen_values = true)]
        phi0: Option<f64>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Smallest |psi| sampled; the meniscus only reaches zero inclination at infinity.
        #[arg(long, default_value_t = DEFAULT_PSI_CUTOFF)]
        cutoff: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Region labels over a grid of (A, C).
    RegionMap {
        #[command(flatten)]
        angle: AngleArgs,
        #[arg(long = "A-min", default_value_t = Window::default().mass_ratio.0)]
        mass_min: f64,
        #[arg(long = "A-max", default_value_t = Window::default().mass_ratio.1)]
        mass_max: f64,
        #[arg(long = "C-min", default_value_t = Window::default().capillary_ratio.0)]
        capillary_min: f64,
        #[arg(long = "C-max", default_value_t = Window::default().capillary_ratio.1)]
        capillary_max: f64,
        /// Grid points per axis.
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Critical mass ratio A* with its asymptotic approximations.
    Astar {
        #[command(flatten)]
        angle: AngleArgs,
        #[arg(long = "C")]
        capillary_ratio: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Runs the oracle suite; exits 1 if any check fails.
    Verify {
        #[arg(long, default_value_t = SuiteConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = SuiteConfig::default().sets)]
        sets: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct AngleArgs {
    /// Contact angle, radians unless --degrees.
    #[arg(long)]
    gamma: f64,
    /// Read angle flags in degrees.
    #[arg(long)]
    degrees: bool,
}

impl AngleArgs {
    fn radians(&self, value: f64) -> f64 {
        if self.degrees {
            value.to_radians()
        } else {
            value
        }
    }

    fn gamma(&self) -> f64 {
        self.radians(self.gamma)
    }
}

#[derive(Args)]
struct ParamArgs {
    #[command(flatten)]
    angle: AngleArgs,
    /// Mass ratio m/(a^2 rho).
    #[arg(long = "A", allow_hyphen_values = true)]
    mass_ratio: Option<f64>,
    /// Capillary ratio a*sqrt(rho g/sigma).
    #[arg(long = "C")]
    capillary_ratio: Option<f64>,
    /// Mass per unit length.
    #[arg(long)]
    m: Option<f64>,
    /// Density difference.
    #[arg(long)]
    rho: Option<f64>,
    /// Surface tension.
    #[arg(long)]
    sigma: Option<f64>,
    /// Gravitational acceleration.
    #[arg(long)]
    g: Option<f64>,
    /// Cylinder radius.
    #[arg(long)]
    a: Option<f64>,
    /// Allow A <= 0.
    #[arg(long)]
    exploratory: bool,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Record the generation time in the metadata.
    #[arg(long)]
    timestamp: bool,
}

enum Failure {
    Usage(String),
    NoValidEquilibrium(String),
    Domain(capfloat::Error),
    Io(io::Error),
}

impl From<capfloat::Error> for Failure {
    fn from(e: capfloat::Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// What a successful command reports besides its table.
enum Outcome {
    Ok,
    NoValidEquilibrium,
    ChecksFailed,
}

impl ParamArgs {
    fn resolve(&self, table: &mut Table) -> Result<DimensionlessParams, Failure> {
        let gamma = self.angle.gamma();
        let physical = [("m", self.m), ("rho", self.rho), ("sigma", self.sigma), ("g", self.g), ("a", self.a)];
        let any_physical = physical.iter().any(|(_, v)| v.is_some());
        let any_dimensionless = self.mass_ratio.is_some() || self.capillary_ratio.is_some();

        table.meta("gamma [rad]", gamma);
        match (any_dimensionless, any_physical) {
            (true, true) => Err(Failure::Usage("give either --A/--C or the physical set, not both".into())),
            (false, false) => Err(Failure::Usage("give --A and --C, or --m --rho --sigma --g --a".into())),
            (true, false) => {
                let (Some(a), Some(c)) = (self.mass_ratio, self.capillary_ratio) else {
                    return Err(Failure::Usage("--A and --C must be given together".into()));
                };
                let p = if self.exploratory {
                    DimensionlessParams::exploratory(a, c, gamma)?
                } else {
                    DimensionlessParams::new(a, c, gamma)?
                };
                table.meta("input", "dimensionless");
                table.meta("A", p.mass_ratio());
                table.meta("C", p.capillary_ratio());
                if self.exploratory {
                    table.meta("exploratory", true);
                }
                Ok(p)
            }
            (false, true) => {
                let missing: Vec<String> =
                    physical.iter().filter(|(_, v)| v.is_none()).map(|(k, _)| format!("--{k}")).collect();
                if !missing.is_empty() {
                    return Err(Failure::Usage(format!("physical input is missing {}", missing.join(" "))));
                }
                let value = |i: usize| physical[i].1.unwrap_or_default();
                let phys = PhysicalParams {
                    mass: value(0),
                    density: value(1),
                    surface_tension: value(2),
                    gravity: value(3),
                    radius: value(4),
                    contact_angle: gamma,
                };
                let p = phys.to_dimensionless()?;
                table.meta("input", "physical");
                for (key, v) in physical {
                    table.meta(key, v);
                }
                table.meta("A (derived)", p.mass_ratio());
                table.meta("C (derived)", p.capillary_ratio());
                Ok(p)
            }
        }
    }
}

fn stability_text(s: Stability) -> Value {
    serde_json::to_value(s).unwrap_or(Value::Null)
}

fn equilibria(params: &ParamArgs) -> Result<(Table, Outcome), Failure> {
    let mut table = Table::new(
        "equilibria",
        vec![
            col("phi0", "rad"),
            col("height", "a"),
            col("stability", ""),
            col("dforce", "sigma/rad"),
            col("valid", ""),
            col("regime", ""),
            col("intersection", "1"),
        ],
    );
    let p = params.resolve(&mut table)?;
    let classified = classify_equilibria(&p);
    for c in &classified {
        table.push(vec![
            json!(c.equilibrium.wetting),
            json!(c.equilibrium.height),
            stability_text(c.equilibrium.stability),
            json!(c.equilibrium.dforce),
            json!(c.is_valid()),
            serde_json::to_value(c.validity.regime).unwrap_or(Value::Null),
            json!(c.validity.intersection_value),
        ]);
    }
    let outcome = if classified.iter().any(|c| c.is_valid()) { Outcome::Ok } else { Outcome::NoValidEquilibrium };
    Ok((table, outcome))
}

fn curves(params: &ParamArgs, resolution: usize) -> Result<(Table, Outcome), Failure> {
    if resolution < 2 {
        return Err(capfloat::Error::TooFewSamples(resolution).into());
    }
    let mut table = Table::new(
        "curves",
        vec![col("phi0", "rad"), col("force", "sigma"), col("energy", "sigma*a"), col("height", "a")],
    );
    let p = params.resolve(&mut table)?;
    let step = std::f64::consts::PI / (resolution - 1) as f64;
    for i in 0..resolution {
        let phi0 = if i == resolution - 1 { std::f64::consts::PI } else { step * i as f64 };
        table.push(vec![json!(phi0), json!(total_force(phi0, &p)), json!(total_energy(phi0, &p).total), json!(height(phi0, &p))]);
    }
    Ok((table, Outcome::Ok))
}

fn profile(params: &ParamArgs, phi0: Option<f64>, samples: usize, cutoff: f64) -> Result<(Table, Outcome), Failure> {
    let mut table = Table::new("profile", vec![col("psi", "rad"), col("x", "a"), col("u", "a")]);
    let p = params.resolve(&mut table)?;
    let phi0 = match phi0 {
        Some(v) => params.angle.radians(v),
        None => classify_equilibria(&p)
            .into_iter()
            .find(|c| c.is_valid() && c.equilibrium.stability.is_stable())
            .map(|c| c.equilibrium.wetting)
            .ok_or_else(|| Failure::NoValidEquilibrium("no stable valid equilibrium to draw; pass --phi0".into()))?,
    };
    let shape = interface_profile(phi0, &p, samples, cutoff)?;
    table.meta("phi0 [rad]", phi0);
    table.meta("psi0 [rad]", shape.psi0);
    table.meta("contact x [a]", shape.contact.0);
    table.meta("contact u [a]", shape.contact.1);
    table.meta("flat", shape.flat);
    for s in &shape.samples {
        table.push(vec![json!(s.psi), json!(s.x), json!(s.u)]);
    }
    Ok((table, Outcome::Ok))
}

fn region(angle: &AngleArgs, window: Window, resolution: usize) -> Result<(Table, Outcome), Failure> {
    let gamma = angle.gamma();
    let map = region_map(gamma, &window, (resolution, resolution))?;
    let mut table = Table::new("region-map", vec![col("A", "1"), col("C", "1"), col("label", "")]);
    table.meta("gamma [rad]", gamma);
    table.meta("A range", [window.mass_ratio.0, window.mass_ratio.1]);
    table.meta("C range", [window.capillary_ratio.0, window.capillary_ratio.1]);
    table.meta("resolution", resolution);
    for (a, c, label) in map.cells() {
        table.push(vec![json!(a), json!(c), json!(label.code())]);
    }
    table.extra("curves", &map.curves);
    Ok((table, Outcome::Ok))
}

fn astar(angle: &AngleArgs, capillary_ratio: f64) -> Result<(Table, Outcome), Failure> {
    let gamma = angle.gamma();
    let mut table = Table::new("astar", vec![col("method", ""), col("A_star", "1"), col("phi0_star", "rad")]);
    table.meta("gamma [rad]", gamma);
    table.meta("C", capillary_ratio);
    let exact = critical_mass_ratio(capillary_ratio, gamma)?;
    table.push(vec![json!("numeric"), json!(exact.mass_ratio), json!(exact.wetting)]);
    if (gamma - FRAC_PI_2).abs() <= SERIES_ANGLE_TOLERANCE {
        for (name, regime) in
            [("small_c_series", AsymptoticRegime::SmallCapillary), ("large_c_series", AsymptoticRegime::LargeCapillary)]
        {
            let approx = asymptotic_critical_mass(capillary_ratio, gamma, regime)?;
            table.push(vec![json!(name), json!(approx.mass_ratio), json!(approx.wetting)]);
        }
    }
    Ok((table, Outcome::Ok))
}

fn verify(seed: u64, sets: usize) -> Result<(Table, Outcome), Failure> {
    let config = SuiteConfig { seed, sets, ..SuiteConfig::default() };
    let mut table = Table::new(
        "verify",
        vec![
            col("name", ""),
            col("max_abs_err", ""),
            col("max_rel_err", ""),
            col("samples", ""),
            col("tolerance", ""),
            col("passed", ""),
        ],
    );
    table.meta("seed", seed);
    table.meta("sets", sets);
    let reports = run_suite(&config);
    for r in &reports {
        table.push(vec![
            json!(r.name),
            json!(r.max_abs_err),
            json!(r.max_rel_err),
            json!(r.samples),
            json!(r.tolerance),
            json!(r.passed),
        ]);
    }
    let outcome = if reports.iter().all(|r| r.passed) { Outcome::Ok } else { Outcome::ChecksFailed };
    Ok((table, outcome))
}

fn emit(table: &mut Table, output: &OutputArgs) -> io::Result<()> {
    if output.timestamp {
        table.meta("generated", chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    }
    let mut sink: Box<dyn Write> = match &output.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    table.write(output.format, &mut *sink)?;
    sink.flush()
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let (result, output) = match &cli.command {
        Command::Equilibria { params, output } => (equilibria(params), output),
        Command::Curves { params, resolution, output } => (curves(params, *resolution), output),
        Command::Profile { params, phi0, samples, cutoff, output } => {
            (profile(params, *phi0, *samples, *cutoff), output)
        }
        Command::RegionMap { angle, mass_min, mass_max, capillary_min, capillary_max, resolution, output } => {
            let window = Window { mass_ratio: (*mass_min, *mass_max), capillary_ratio: (*capillary_min, *capillary_max) };
            (region(angle, window, *resolution), output)
        }
        Command::Astar { angle, capillary_ratio, output } => (astar(angle, *capillary_ratio), output),
        Command::Verify { seed, sets, output } => (verify(*seed, *sets), output),
    };
    let (mut table, outcome) = result?;
    emit(&mut table, output)?;
    Ok(outcome)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::NoValidEquilibrium) => {
            eprintln!("capfloat: no valid equilibrium");
            ExitCode::from(3)
        }
        Ok(Outcome::ChecksFailed) => {
            eprintln!("capfloat: oracle checks failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::NoValidEquilibrium(msg)) => {
            eprintln!("capfloat: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("capfloat: {e}");
            ExitCode::from(4)
        }
        Err(Failure::Io(e)) => {
            eprintln!("capfloat: {e}");
            ExitCode::from(1)
        }
    }
}
