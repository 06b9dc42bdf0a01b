use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use cubechow::blowup::{homotopy_h0, sd_level, DivisorOrigin, HomotopyEnd, Tower, TowerJson};
use cubechow::fixtures::Corpus;
use cubechow::sheaf::{glue, mv_check, OpenSet};
use cubechow::subdivision::{
    cubical_subdivision, phi_chain, sample_general_position, CandidateStream, GeneralPoint, SubdivisionForm,
};
use cubechow::suites::{run_pipeline, verify_suite, SuiteOptions, SUITES};
use cubechow::{BlowupError, Cycle, CycleError, CycleJson, SheafError, SubdivisionError, SuiteError, VerificationReport};
use serde_json::{json, Value};

use crate::{Cli, Command, CycleCommand, Form, MvCommand, TowerCommand};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
    #[error(transparent)]
    Sheaf(#[from] SheafError),
    #[error(transparent)]
    Suite(#[from] SuiteError),
}

/// What to print, and whether every check passed.
pub struct Output {
    pub text: String,
    pub pass: bool,
}

impl Output {
    fn new(json: bool, value: Value, human: String, pass: bool) -> Output {
        let text = if json { format!("{}\n", serde_json::to_string_pretty(&value).expect("json value")) } else { human };
        Output { text, pass }
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let corpus = match &cli.corpus {
        Some(dir) => Corpus::load(dir)?,
        None => Corpus::builtin(),
    };
    match &cli.command {
        Command::Verify(args) => {
            let mut options = SuiteOptions { seed: cli.seed, ..SuiteOptions::default() };
            options.random = args.random.unwrap_or(options.random);
            options.max_n = args.max_n.unwrap_or(options.max_n);
            options.points = args.points.unwrap_or(options.points);
            verify(&args.suites, &corpus, &options, cli.json)
        }
        Command::Cycle(cmd) => cycle(cmd, cli.json),
        Command::Subdivide(args) => {
            let z = read_cycle(&args.cycle)?;
            let c = sample_general_position(&z, cli.seed, args.budget)?;
            let form = match args.form {
                Form::Iterated => SubdivisionForm::Iterated,
                Form::Vertex => SubdivisionForm::VertexSum,
            };
            let sd = cubical_subdivision(&z, &c, form)?;
            let mut value = json!({ "point": point_json(&c), "cycle": sd.to_json() });
            let mut human = format!("c = {c}\nsd = {sd}\n");
            let mut pass = true;
            if args.certify {
                let cert = phi_chain(&z, &c)?;
                pass = cert.pass;
                value["certificate"] = json!({
                    "pass": cert.pass,
                    "chain": cert.chain.to_json(),
                    "lhs": cert.lhs.to_string(),
                    "rhs": cert.rhs.to_string(),
                });
                let _ = writeln!(human, "certificate {}: d(phi) = {}", verdict(cert.pass), cert.lhs);
            }
            Ok(Output::new(cli.json, value, human, pass))
        }
        Command::Tower(TowerCommand::Build { spec }) => tower_build(&read_tower(spec)?, cli.json),
        Command::Tower(TowerCommand::Apply { cycle, spec, certify_h0, budget }) => {
            tower_apply(&read_cycle(cycle)?, &read_tower(spec)?, *certify_h0, cli.seed, *budget, cli.json)
        }
        Command::Mv(MvCommand::Demo { ambient, corpus: file, u, v }) => {
            let cycles = match file {
                Some(path) => {
                    let list: Vec<CycleJson> = read_json(path)?;
                    list.iter().map(Cycle::from_json).collect::<Result<Vec<_>, _>>()?
                }
                None => corpus.sheaf.cycles()?,
            };
            let m = ambient.or(cycles.first().map(|z| z.ambient().dim())).unwrap_or(corpus.sheaf.ambient_dim);
            if let Some(z) = cycles.iter().find(|z| z.ambient().dim() != m) {
                return Err(CliError::Usage(format!("cycle over a {}-dimensional ambient, expected {m}", z.ambient().dim())));
            }
            let (default_u, default_v) = corpus.sheaf.opens()?;
            let u = if u.is_empty() { default_u } else { open_set(m, u)? };
            let v = if v.is_empty() { default_v } else { open_set(m, v)? };
            let report = mv_check(&u, &v, &cycles)?;
            Ok(report_output(&[report], cli.json))
        }
        Command::Glue(args) => {
            let x1 = read_cycle(&args.first)?;
            let x2 = read_cycle(&args.second)?;
            let m = x1.ambient().dim();
            let g = glue(&x1, &x2, &open_set(m, &args.u)?, &open_set(m, &args.v)?)?;
            let value = json!({
                "glued": g.glued.to_json(),
                "delta_u": g.delta_u.to_json(),
                "delta_v": g.delta_v.to_json(),
            });
            let human = format!("glued = {}\ndelta_u = {}\ndelta_v = {}\n", g.glued, g.delta_u, g.delta_v);
            Ok(Output::new(cli.json, value, human, true))
        }
        Command::Pipeline(args) => {
            let z = read_cycle(&args.cycle)?;
            let options = SuiteOptions { seed: cli.seed, ..SuiteOptions::default() };
            let stages = run_pipeline(&z, &args.steps, &corpus, &options)?;
            let mut human = String::new();
            for stage in &stages {
                let _ = write!(human, "{}: {} [{}]", stage.step, stage.canonical, admissibility(stage.admissible));
                if let Some(w) = &stage.witness {
                    let _ = write!(human, " {w}");
                }
                human.push('\n');
            }
            let value = serde_json::to_value(&stages).expect("stages serialize");
            Ok(Output::new(cli.json, value, human, true))
        }
    }
}

fn verify(names: &[String], corpus: &Corpus, options: &SuiteOptions, json: bool) -> Result<Output, CliError> {
    let names: Vec<&str> = if names.iter().any(|n| n == "all") {
        SUITES.iter().map(|(n, _)| *n).collect()
    } else {
        names.iter().map(String::as_str).collect()
    };
    // Each suite seeds its own sampler, so running them side by side does not
    // change any report.
    let results: Vec<Result<VerificationReport, SuiteError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = names.iter().map(|n| scope.spawn(move || verify_suite(n, corpus, options))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(report_output(&reports, json))
}

fn report_output(reports: &[VerificationReport], json: bool) -> Output {
    let pass = reports.iter().all(VerificationReport::passed);
    let value = if reports.len() == 1 {
        serde_json::to_value(&reports[0])
    } else {
        serde_json::to_value(reports)
    }
    .expect("reports serialize");
    let human = reports.iter().map(ToString::to_string).collect();
    Output::new(json, value, human, pass)
}

fn cycle(cmd: &CycleCommand, json: bool) -> Result<Output, CliError> {
    match cmd {
        CycleCommand::Check { file } => {
            let z = read_cycle(file)?;
            let adm = z.admissibility();
            let normalized = z.is_normalized()?;
            let mut human = format!("{z}\nadmissible: {}\n", adm.is_ok());
            if let Err(w) = &adm {
                let _ = writeln!(human, "witness: {w}");
            }
            let _ = writeln!(human, "normalized: {normalized}");
            let value = json!({
                "canonical": z.to_string(),
                "cycle": z.to_json(),
                "admissible": adm.is_ok(),
                "witness": adm.as_ref().err().map(ToString::to_string),
                "normalized": normalized,
            });
            Ok(Output::new(json, value, human, adm.is_ok()))
        }
        CycleCommand::Face { file, index, eps } => {
            let face = read_cycle(file)?.face_reduced(*index, *eps)?;
            Ok(cycle_output(&face, json))
        }
        CycleCommand::Boundary { file } => Ok(cycle_output(&read_cycle(file)?.boundary()?, json)),
    }
}

fn cycle_output(z: &Cycle, json: bool) -> Output {
    let value = serde_json::to_value(z.to_json()).expect("cycle serializes");
    Output::new(json, value, format!("{z}\n"), true)
}

fn tower_build(tower: &Tower, json: bool) -> Result<Output, CliError> {
    let mut levels = Vec::new();
    let mut human = String::new();
    for space in tower.spaces() {
        let signs = space.vertex_signs()?;
        let divisors: Vec<Value> = space
            .divisors()
            .iter()
            .map(|d| match d.origin {
                DivisorOrigin::Coordinate { coord, value } => json!({ "id": d.id, "coord": coord, "value": value }),
                DivisorOrigin::Exceptional { step } => json!({ "id": d.id, "exceptional_step": step }),
            })
            .collect();
        let vertices: Vec<Value> = space
            .vertices()
            .iter()
            .zip(&signs)
            .map(|(v, s)| json!({ "divisors": v.divisors(), "sign": s }))
            .collect();
        let edges: Vec<&[usize]> = space.edges().iter().map(|e| e.divisors.as_slice()).collect();
        let _ = writeln!(
            human,
            "level {}: {} divisors, {} vertices, {} edges",
            space.level(),
            divisors.len(),
            vertices.len(),
            edges.len()
        );
        for (v, s) in space.vertices().iter().zip(&signs) {
            let _ = writeln!(human, "  vertex {:?} sign {s:+}", v.divisors());
        }
        levels.push(json!({ "level": space.level(), "divisors": divisors, "vertices": vertices, "edges": edges }));
    }
    let value = json!({ "n": tower.dim(), "steps": tower.steps(), "levels": levels });
    Ok(Output::new(json, value, human, true))
}

fn tower_apply(z: &Cycle, tower: &Tower, certify: bool, seed: u64, budget: usize, json: bool) -> Result<Output, CliError> {
    if tower.dim() != z.cube_dim() {
        return Err(CliError::Usage(format!("tower over a {}-cube, cycle in a {}-cube", tower.dim(), z.cube_dim())));
    }
    let (c, level) = CandidateStream::new(seed, z.cube_dim())
        .take(budget)
        .find_map(|c| sd_level(z, tower.top(), &c).ok().filter(|l| l.admissibility.is_ok()).map(|l| (c, l)))
        .ok_or(SubdivisionError::BudgetExhausted { attempts: budget })?;
    let mut value = json!({ "point": point_json(&c), "cycle": level.cycle.to_json(), "admissible": true });
    let mut human = format!("c = {c}\nlevel {} = {}\nadmissible: true\n", tower.top().level(), level.cycle);
    let mut pass = true;
    if certify {
        let mut found = None;
        for c_ext in CandidateStream::new(seed, z.cube_dim() + 1).take(budget) {
            match homotopy_h0(z, tower, &c_ext, HomotopyEnd::One) {
                Ok(cert) => {
                    found = Some((c_ext, cert));
                    break;
                }
                Err(BlowupError::NonGeneral(_)) => continue,
                Err(e) => return Err(e.into()),
            }
        }
        let (c_ext, cert) = found.ok_or(SubdivisionError::BudgetExhausted { attempts: budget })?;
        pass = cert.pass;
        value["h0"] = json!({
            "point": point_json(&c_ext),
            "pass": cert.pass,
            "homotopy": cert.homotopy.to_json(),
            "lhs": cert.lhs.to_string(),
            "rhs": cert.rhs.to_string(),
        });
        let _ = writeln!(human, "homotopy certificate {} at {c_ext}", verdict(cert.pass));
    }
    Ok(Output::new(json, value, human, pass))
}

fn point_json(c: &GeneralPoint) -> Vec<String> {
    c.values().iter().map(ToString::to_string).collect()
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn admissibility(admissible: bool) -> &'static str {
    if admissible {
        "admissible"
    } else {
        "inadmissible"
    }
}

fn open_set(ambient_dim: usize, generators: &[String]) -> Result<OpenSet, CliError> {
    let refs: Vec<&str> = generators.iter().map(String::as_str).collect();
    Ok(OpenSet::parse(ambient_dim, &refs)?)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

fn read_cycle(path: &Path) -> Result<Cycle, CliError> {
    Ok(Cycle::from_json(&read_json::<CycleJson>(path)?)?)
}

fn read_tower(path: &Path) -> Result<Tower, CliError> {
    Ok(Tower::from_json(&read_json::<TowerJson>(path)?)?)
}
