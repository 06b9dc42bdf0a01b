//! Named verification suites over the fixture corpus, and the step pipeline.

use std::ops::RangeInclusive;
use std::time::Instant;

use cubechow_poly::{parse_rational, Polynomial, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::blowup::{homotopy_h0, sd_level, HomotopyEnd, Tower};
use crate::cube::{vertex_sign, vertices, CubeFace};
use crate::cycle::{Ambient, ComponentSpec, Cycle, CycleJson};
use crate::error::{SubdivisionError, SuiteError};
use crate::fixtures::Corpus;
use crate::morphism::CubeMorphism;
use crate::report::VerificationReport;
use crate::sheaf::{class_equal, in_kernel, mv_check, OpenSet, MV_STATEMENT};
use crate::subdivision::{
    bidivision, cubical_subdivision, is_general_for, phi_chain, phi_homotopy, sample_from, CandidateStream,
    GeneralPoint, SubdivisionForm,
};
use crate::tables;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Size of randomized corpora.
    pub random: usize,
    /// Sampled general points per fixture.
    pub points: usize,
    /// Candidates tried before a sample gives up.
    pub budget: usize,
    /// Largest cube dimension for the morphism tables.
    pub max_n: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 7, random: 100, points: 3, budget: 200, max_n: 4 }
    }
}

/// Every suite with the statement it checks. A suite without a statement is
/// refused by [`verify_suite`].
pub const SUITES: [(&str, &str); 12] = [
    ("eta-table", tables::ETA_STATEMENT),
    ("h-faces", tables::H_FACE_STATEMENT),
    ("bidiv-homotopy", "The bi-division homotopy satisfies d(phi_{c,i} Z) = Z - delta_{c_i,i} Z for normalized Z"),
    ("delta-preserves-normal", "Bi-division of a normalized cycle is normalized"),
    ("sd-two-forms", "Iterated bi-division equals the signed sum of vertex pullbacks"),
    ("sd-chain", "The telescoped homotopy satisfies d(phi_n Z) = Z - sd_c Z"),
    ("boundary-squared", "The alternating face boundary squares to zero on admissible cycles"),
    ("involution-admissible", "Coordinate involutions and multiplication pull admissible cycles back to admissible cycles"),
    ("signs-recurrence", "Face blow-up towers have two-ended edges and vertex signs obeying the edge recurrence"),
    ("mv-exactness", MV_STATEMENT),
    ("h0-boundary", "The tower homotopy satisfies dH = sd^M Z - sd^0 Z modulo degenerate cycles"),
    ("localization-demo", "A cycle admissible off x1 = 0 has an inadmissible closure that becomes admissible after subdivision on a blown-up cube"),
];

pub fn suite_statement(name: &str) -> Option<&'static str> {
    SUITES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn verify_suite(name: &str, corpus: &Corpus, options: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let statement = suite_statement(name)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| SuiteError::UnknownSuite(name.to_string()))?;
    let start = Instant::now();
    let mut report = match name {
        "eta-table" => tables::verify_eta_table(),
        "h-faces" => {
            let mut r = tables::verify_h_face_table(options.max_n);
            r.extend(tables::verify_cubical_relations(options.max_n));
            r
        }
        "bidiv-homotopy" => bidiv_homotopy(corpus, options)?,
        "delta-preserves-normal" => delta_preserves_normal(corpus, options)?,
        "sd-two-forms" => sd_two_forms(corpus, options)?,
        "sd-chain" => sd_chain(corpus, options)?,
        "boundary-squared" => boundary_squared(corpus, options)?,
        "involution-admissible" => involution_admissible(corpus, options)?,
        "signs-recurrence" => signs_recurrence(corpus)?,
        "mv-exactness" => mv_exactness(corpus, options)?,
        "h0-boundary" => h0_boundary(corpus, options)?,
        "localization-demo" => localization_demo(corpus, options)?,
        _ => unreachable!("registered suite"),
    };
    report.suite = name.to_string();
    report.statement = statement.to_string();
    report.wall_time_ms = Some(start.elapsed().as_millis());
    Ok(report)
}

/// Independent sampler stream for one fixture within a suite.
fn stream(options: &SuiteOptions, salt: usize, dim: usize) -> CandidateStream {
    CandidateStream::new(options.seed.wrapping_mul(1_000_003).wrapping_add(salt as u64), dim)
}

/// `count` accepted general points for `z`, drawn in order from one stream.
pub fn general_points(z: &Cycle, seed: u64, count: usize, budget: usize) -> Result<Vec<GeneralPoint>, SubdivisionError> {
    let mut candidates = CandidateStream::new(seed, z.cube_dim());
    (0..count).map(|_| sample_from(z, &mut candidates, budget).map(|s| s.point)).collect()
}

fn fixture_points(z: &Cycle, options: &SuiteOptions, salt: usize, count: usize) -> Result<Vec<GeneralPoint>, SuiteError> {
    let mut candidates = stream(options, salt, z.cube_dim());
    (0..count)
        .map(|_| Ok(sample_from(z, &mut candidates, options.budget)?.point))
        .collect()
}

fn bidiv_homotopy(corpus: &Corpus, options: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let mut report = VerificationReport::new("bidiv-homotopy", "");
    for (k, f) in corpus.cycles.iter().enumerate().filter(|(_, f)| f.has_tag("normalized")) {
        let z = f.cycle()?;
        for c in fixture_points(&z, options, k, options.points)? {
            for i in 1..=z.cube_dim() {
                let cert = phi_homotopy(&z, i, &c)?;
                report.compare(format!("{} c={c} i={i}", f.id), &cert.lhs, &cert.rhs);
            }
        }
        for bad in &f.bad_parameters {
            let value = parse_rational(bad).map_err(|e| SuiteError::Fixture { name: f.id.clone(), detail: e.to_string() })?;
            let c = GeneralPoint::new(vec![value; z.cube_dim()])?;
            report.check(format!("{} rejects c={c}", f.id), !is_general_for(&z, &c));
        }
    }
    Ok(report)
}

fn delta_preserves_normal(corpus: &Corpus, options: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let mut report = VerificationReport::new("delta-preserves-normal", "");
    for (k, f) in corpus.cycles.iter().enumerate().filter(|(_, f)| f.has_tag("normalized")) {
        let z = f.cycle()?;
        for c in fixture_points(&z, options, k, options.points)? {
            for i in 1..=z.cube_dim() {
                let d = bidivision(&z, i, c.coord(i))?;
                let faces = d.nonzero_faces()?;
                let id = format!("{} c={c} i={i}", f.id);
                match faces.first() {
                    None => report.check(id, true),
                    Some((j, eps, face)) => report.fail(id, format!("face y{j}={eps} is {face}")),
                }
            }
        }
    }
    Ok(report)
}

fn sd_two_forms(corpus: &Corpus, options: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let mut report = VerificationReport::new("sd-two-forms", "");
    for (k, f) in corpus.cycles.iter().enumerate().filter(|(_, f)| f.has_tag("admissible")) {
        let z = f.cycle()?;
        if z.cube_dim() > 3 {
            continue;
        }
        for c in fixture_points(&z, options, k, 1)? {
            let iterated = cubical_subdivision(&z, &c, SubdivisionForm::Iterated)?;
            let vertex = cubical_subdivision(&z, &c, SubdivisionForm::VertexSum)?;
            report.compare(format!("{} c={c}", f.id), &iterated, &vertex);
            let level0 = sd_level(&z, &Tower::build(z.cube_dim(), &[])?.spaces()[0], &c)?;
            report.compare(format!("{} c={c} level 0", f.id), &level0.cycle, &iterated);
        }
    }
    for n in 1..=3 {
        let signs: Vec<i64> = vertices(n).iter().map(|v| vertex_sign(v)).collect();
        report.check(
            format!("n={n}: {} vertex terms, signs sum to 0", signs.len()),
            signs.len() == 1 << n && signs.iter().sum::<i64>() == 0,
        );
    }
    Ok(report)
}

fn sd_chain(corpus: &Corpus, options: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let mut report = VerificationReport::new("sd-chain", "");
    for (k, f) in corpus.cycles.iter().enumerate().filter(|(_, f)| f.has_tag("normalized")) {
        let z = f.cycle()?;
        for c in fixture_points(&z, options, k, 1)? {
            let cert = phi_chain(&z, &c)?;
            report.compare(format!("{} c={c}", f.id), &cert.lhs, &cert.rhs);
            report.check(format!("{} c={c} stages normalized", f.id), cert.stages_normalized.iter().all(|&b| b));
        }
    }
    Ok(report)
}

/// Random cycle whose components are cut out by linear equations solved for
/// distinct pivot variables, so each has the expected dimension. Not necessarily
/// admissible.
pub fn random_linear_cycle(rng: &mut impl Rng, cube_dims: RangeInclusive<usize>) -> Cycle {
    let n = rng.gen_range(cube_dims);
    let m = rng.gen_range(0..=1usize);
    let k = rng.gen_range(1..=n);
    let nvars = m + n;
    let ambient = Ambient::affine(m);
    let comps = rng.gen_range(1..=2);
    let specs: Vec<ComponentSpec> = (0..comps)
        .map(|_| {
            let mut vars: Vec<usize> = (0..nvars).collect();
            vars.shuffle(rng);
            let pivots = &vars[..k];
            let generators = pivots
                .iter()
                .map(|&p| {
                    let mut g = Polynomial::var(nvars, p);
                    for v in (0..nvars).filter(|v| !pivots.contains(v)) {
                        let a: i64 = rng.gen_range(-3..=3);
                        g = &g - &Polynomial::var(nvars, v).scale(&Rational::from_integer(a.into()));
                    }
                    let num: i64 = rng.gen_range(-7..=7);
                    let den: i64 = rng.gen_range(1..=3);
                    &g - &Polynomial::constant(nvars, Rational::new(num.into(), den.into()))
                })
                .collect();
            let coefficient = *[-2i64, -1, 1, 2, 3].choose(rng).unwrap();
            ComponentSpec { coefficient, generators, irreducible: true }
        })
        .collect();
    Cycle::build(ambient, n, m as i64 - k as i64, specs).expect("pivoted linear equations have the expected dimension")
}

/// `count` admissible random linear cycles from a seeded stream.
pub fn random_admissible_linear_cycles(seed: u64, count: usize, cube_dims: RangeInclusive<usize>) -> Vec<Cycle> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let z = random_linear_cycle(&mut rng, cube_dims.clone());
        if z.is_admissible() {
            out.push(z);
        }
    }
    out
}

fn boundary_squared(corpus: &Corpus, options: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let mut report = VerificationReport::new("boundary-squared", "");
    let zero = |z: &Cycle| Cycle::zero(z.ambient().clone(), z.cube_dim().saturating_sub(2), z.rel_dim());
    for (k, z) in random_admissible_linear_cycles(options.seed, options.random, 2..=3).iter().enumerate() {
        let dd = z.boundary()?.boundary()?;
        report.compare(format!("random #{k} ({z})"), &dd, &zero(z));
    }
    for f in corpus.tagged("admissible").filter(|f| f.cycle.cube_dim >= 2) {
        let z = f.cycle()?;
        report.compare(f.id.clone(), &z.boundary()?.boundary()?, &zero(&z));
    }
    Ok(report)
}

fn involution_admissible(corpus: &Corpus, options: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let mut report = VerificationReport::new("involution-admissible", "");
    let mut cases: Vec<(String, Cycle)> = Vec::new();
    for f in corpus.tagged("admissible") {
        cases.push((f.id.clone(), f.cycle()?));
    }
    let random = random_admissible_linear_cycles(options.seed, options.random.min(20), 1..=3);
    cases.extend(random.into_iter().enumerate().map(|(k, z)| (format!("random #{k}"), z)));
    for (id, z) in &cases {
        let n = z.cube_dim();
        for j in 1..=n {
            let flipped = z.pullback(&CubeMorphism::involution(n, j, 0))?;
            report.check(format!("{id} tau_{j} admissible"), flipped.is_admissible());
            report.compare(format!("{id} tau_{j} swaps faces"), &flipped.face(j, 0)?, &z.face(j, 1)?);
        }
        if n == 1 {
            let product = z.pullback(&CubeMorphism::multiplication(0))?;
            report.check(format!("{id} multiplication admissible"), product.is_admissible());
        }
    }
    Ok(report)
}

fn signs_recurrence(corpus: &Corpus) -> Result<VerificationReport, SuiteError> {
    let mut report = VerificationReport::new("signs-recurrence", "");
    for f in &corpus.towers {
        let tower = f.tower()?;
        for (level, space) in tower.spaces().iter().enumerate() {
            let id = format!("{} level {level}", f.id);
            let counts = (space.divisors().len(), space.vertices().len(), space.edges().len());
            match f.counts.get(level) {
                Some(expected) => report.compare(format!("{id} counts"), &format!("{counts:?}"), &format!("{expected:?}")),
                None => report.fail(format!("{id} counts"), "no expected counts"),
            }
            let two_ended = space.edges().iter().all(|e| {
                let (a, b) = e.ends;
                a != b
                    && space.vertices().iter().filter(|v| e.divisors.iter().all(|d| v.divisors().contains(d))).count() == 2
            });
            report.check(format!("{id} every edge has two vertices"), two_ended);
            match space.vertex_signs() {
                Ok(signs) => {
                    let adjacent_ok = space.edges().iter().all(|e| {
                        let (v, w) = e.ends;
                        space
                            .edge_permutation(v, w)
                            .map(|p| signs[v] == -crate::blowup::permutation_sign(&p) * signs[w])
                            .unwrap_or(false)
                    });
                    report.check(format!("{id} edge recurrence"), adjacent_ok);
                    let base_ok = space
                        .vertices()
                        .iter()
                        .zip(&signs)
                        .all(|(v, s)| v.base_vertex().is_none_or(|b| vertex_sign(b) == *s));
                    report.check(format!("{id} untouched vertices keep (-1)^m"), base_ok);
                }
                Err(e) => report.fail(format!("{id} signs"), e.to_string()),
            }
        }
    }
    Ok(report)
}

fn mv_exactness(corpus: &Corpus, options: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let (u, v) = corpus.sheaf.opens()?;
    let cycles = corpus.sheaf.cycles()?;
    let mut report = mv_check(&u, &v, &cycles)?;
    let whole = OpenSet::whole(corpus.sheaf.ambient_dim);
    report.extend(mv_check(&whole, &whole, &cycles)?);
    report.extend(kernel_law(&cycles, corpus.sheaf.ambient_dim, options.seed, options.random)?);
    // Restriction along D(x1(x1-1)) ⊆ D(x1) ⊆ Y agrees with the direct one.
    let chain = [whole.clone(), u.clone(), u.intersect(&v)];
    for (a, z1) in cycles.iter().enumerate() {
        for (b, z2) in cycles.iter().enumerate() {
            let verdicts = chain.iter().map(|o| class_equal(z1, z2, o)).collect::<Result<Vec<_>, _>>()?;
            report.check(
                format!("restriction composes on (#{a}, #{b})"),
                verdicts.windows(2).all(|w| !w[0] || w[1]),
            );
        }
    }
    Ok(report)
}

/// `Z ∈ G(W1) ∩ G(W2)` iff `Z ∈ G(W1 ∩ W2)` on random pairs of closed sets.
pub fn kernel_law(cycles: &[Cycle], ambient_dim: usize, seed: u64, trials: usize) -> Result<VerificationReport, SuiteError> {
    let mut report = VerificationReport::new("kernel-law", "");
    let pool = ["x1", "x1 - 1", "x1 - 2", "x1^2 - x1", "x1^2 - 2*x1", "x1^3 - 3*x1^2 + 2*x1", "1"];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let w1 = OpenSet::parse(ambient_dim, &[pool[rng.gen_range(0..pool.len())]])?;
        let w2 = OpenSet::parse(ambient_dim, &[pool[rng.gen_range(0..pool.len())]])?;
        let z = &cycles[rng.gen_range(0..cycles.len())];
        let both = w1.union(&w2);
        let separately = in_kernel(z, w1.closed()) && in_kernel(z, w2.closed());
        report.check(
            format!("trial {t}: V({}) and V({})", w1.closed()[0].to_string_with(&["x1".into()]), w2.closed()[0].to_string_with(&["x1".into()])),
            separately == in_kernel(z, both.closed()),
        );
    }
    Ok(report)
}

fn h0_boundary(corpus: &Corpus, options: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let mut report = VerificationReport::new("h0-boundary", "");
    let z = corpus.cycle("point-2")?.cycle()?;
    let tower = corpus.tower("pentagon")?.tower()?;
    let mut candidates = stream(options, 0, z.cube_dim() + 1);
    let mut found = false;
    for c in candidates.by_ref().take(options.budget) {
        let Ok(cert) = homotopy_h0(&z, &tower, &c, HomotopyEnd::One) else { continue };
        report.compare(format!("point-2 pentagon c'={c}"), &cert.lhs, &cert.rhs);
        report.check(format!("point-2 pentagon c'={c} homotopy admissible"), cert.homotopy.is_admissible());
        if let Ok(wrong) = homotopy_h0(&z, &tower, &c, HomotopyEnd::Zero) {
            report.check(format!("point-2 pentagon c'={c} wrong end detected"), !wrong.pass);
        }
        found = true;
        break;
    }
    if !found {
        report.fail("point-2 pentagon", format!("no general parameter in {} candidates", options.budget));
    }
    Ok(report)
}

fn localization_demo(corpus: &Corpus, options: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let mut report = VerificationReport::new("localization-demo", "");
    let demo = &corpus.demo;
    let z = corpus.cycle(&demo.cycle)?.cycle()?;
    let tower = corpus.tower(&demo.tower)?.tower()?;
    let m = z.ambient().dim();
    let n = z.cube_dim();

    let expected_face = CubeFace::new(n, demo.inadmissible_face.clone());
    match z.admissibility() {
        Ok(()) => report.fail("closure inadmissible", "closure is admissible"),
        Err(w) => report.compare("closure inadmissible at the vertex face", &w.face.to_string(), &expected_face.to_string()),
    }
    let open = OpenSet::parse(m, &demo.open.iter().map(String::as_str).collect::<Vec<_>>())?;
    let restricted = z.restrict_to_open(open.closed())?;
    report.check(format!("admissible over {open}"), restricted.is_admissible());
    report.compare("closure of the restriction", &restricted.closure_from_open(), &z);

    let mut candidates = stream(options, 0, n);
    let mut chosen = None;
    for c in candidates.by_ref().take(options.budget) {
        if let Ok(level) = sd_level(&z, tower.top(), &c) {
            if level.admissibility.is_ok() {
                chosen = Some((c, level));
                break;
            }
        }
    }
    let Some((c, top)) = chosen else {
        report.fail("level-M subdivision", format!("no admissible parameter in {} candidates", options.budget));
        return Ok(report);
    };
    report.check(format!("level-M subdivision admissible at c={c}"), true);
    let base = sd_level(&z, &tower.spaces()[0], &c)?;
    report.check(format!("level-0 subdivision inadmissible at c={c}"), base.admissibility.is_err());

    // Recompute the level-M cycle from the stored per-chart oracle.
    let mut oracle_total = Cycle::zero(z.ambient().clone(), n, z.rel_dim());
    let signs = tower.top().vertex_signs()?;
    for (vertex, chart) in tower.top().vertices().iter().enumerate() {
        let id = format!("chart {:?}", chart.divisors());
        let Some(oracle) = demo.charts.iter().find(|o| o.divisors == chart.divisors()) else {
            report.fail(id, "missing from the oracle");
            continue;
        };
        report.compare(format!("{id} sign"), &signs[vertex], &oracle.sign);
        let expected = if oracle.generators.is_empty() {
            Cycle::zero(z.ambient().clone(), n, z.rel_dim())
        } else {
            let generators = demo.chart_generators(oracle, m, n, c.values())?;
            Cycle::build(z.ambient().clone(), n, z.rel_dim(), vec![ComponentSpec { coefficient: 1, generators, irreducible: true }])?
        };
        let computed = top.terms.iter().find(|(v, _, _)| *v == vertex).map(|(_, _, t)| t.clone());
        match computed {
            Some(t) => report.compare(format!("{id} strict transform"), &t, &expected),
            None => report.fail(id.clone(), "no computed term"),
        }
        oracle_total = oracle_total.try_add(&expected.scale(oracle.sign))?;
    }
    report.compare("level-M cycle equals the oracle sum", &top.cycle, &oracle_total);
    report.compare("oracle admissibility verdict", &oracle_total.is_admissible(), &demo.admissible_after);

    // The subdivision homotopy on the restricted cycle, where it is admissible.
    let normal = restricted.is_normalized()?;
    if normal {
        if let Ok(cert) = phi_chain(&restricted, &c) {
            report.compare("homotopy certificate on the restriction", &cert.lhs, &cert.rhs);
        }
    }
    Ok(report)
}

/// One stage of [`run_pipeline`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PipelineStage {
    pub step: String,
    pub canonical: String,
    pub admissible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub cycle: CycleJson,
}

impl PipelineStage {
    fn of(step: &str, z: &Cycle) -> Self {
        let adm = z.admissibility();
        PipelineStage {
            step: step.to_string(),
            canonical: z.to_string(),
            admissible: adm.is_ok(),
            witness: adm.err().map(|w| w.to_string()),
            cycle: z.to_json(),
        }
    }
}

/// Applies `steps` in order, recording every intermediate cycle. Steps:
/// `face:i:e`, `boundary`, `bidiv:i:c`, `subdivide:iterated|vertex`,
/// `tower-apply:<tower id>`, `restrict:<g1>;<g2>…`, `close`.
pub fn run_pipeline(
    input: &Cycle,
    steps: &[String],
    corpus: &Corpus,
    options: &SuiteOptions,
) -> Result<Vec<PipelineStage>, SuiteError> {
    let mut stages = vec![PipelineStage::of("input", input)];
    let mut current = input.clone();
    for (k, step) in steps.iter().enumerate() {
        let failed = |detail: String| SuiteError::StepFailed { step: k + 1, detail: format!("{step}: {detail}") };
        let parts: Vec<&str> = step.split(':').collect();
        current = match parts.as_slice() {
            ["face", i, e] => {
                let i: usize = i.parse().map_err(|_| SuiteError::UnknownStep(step.clone()))?;
                let e: u8 = e.parse().map_err(|_| SuiteError::UnknownStep(step.clone()))?;
                current.face_reduced(i, e).map_err(|e| failed(e.to_string()))?
            }
            ["boundary"] => current.boundary().map_err(|e| failed(e.to_string()))?,
            ["bidiv", i, c] => {
                let i: usize = i.parse().map_err(|_| SuiteError::UnknownStep(step.clone()))?;
                let c = parse_rational(c).map_err(|_| SuiteError::UnknownStep(step.clone()))?;
                bidivision(&current, i, &c).map_err(|e| failed(e.to_string()))?
            }
            ["subdivide", form] => {
                let form = match *form {
                    "iterated" => SubdivisionForm::Iterated,
                    "vertex" => SubdivisionForm::VertexSum,
                    _ => return Err(SuiteError::UnknownStep(step.clone())),
                };
                let c = sample_from(&current, stream(options, k, current.cube_dim()), options.budget)
                    .map_err(|e| failed(e.to_string()))?
                    .point;
                cubical_subdivision(&current, &c, form).map_err(|e| failed(e.to_string()))?
            }
            ["tower-apply", id] => {
                let tower = corpus.tower(id)?.tower()?;
                if tower.dim() != current.cube_dim() {
                    return Err(failed(format!("tower over a {}-cube", tower.dim())));
                }
                let mut candidates = stream(options, k, current.cube_dim());
                candidates
                    .by_ref()
                    .take(options.budget)
                    .find_map(|c| sd_level(&current, tower.top(), &c).ok().filter(|l| l.admissibility.is_ok()))
                    .ok_or_else(|| failed(format!("no admissible parameter in {} candidates", options.budget)))?
                    .cycle
            }
            ["restrict", gens] => {
                let gens: Vec<&str> = gens.split(';').collect();
                let open = OpenSet::parse(current.ambient().dim(), &gens)?;
                current.restrict_to_open(open.closed()).map_err(|e| failed(e.to_string()))?
            }
            ["close"] => current.closure_from_open(),
            _ => return Err(SuiteError::UnknownStep(step.clone())),
        };
        stages.push(PipelineStage::of(step, &current));
    }
    Ok(stages)
}
