use crate::error::CliError;
use openbook_hfk_core::floer::{self, Analysis, FilteredComplex, Options};
use openbook_hfk_core::heegaard::{self, Diagram};
use openbook_hfk_core::openbook::OpenBook;
use openbook_hfk_core::surface::{ArcBasis, Endpoint};
use serde::Serialize;
use std::time::Instant;

/// Diagrams up to this many generators also get the periodic-domain
/// grading check.
pub const CROSSCHECK_LIMIT: usize = 10_000;

/// Depth of the search for arcs sent to the left.
pub const RV_BOUND: usize = 2;

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct Timings {
    pub build_ms: f64,
    pub nicefy_ms: f64,
    pub complex_ms: f64,
    pub homology_ms: f64,
    pub veering_ms: f64,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Witness {
    /// Boundary intervals holding the start and end feet, numbered `0..4g`
    /// counterclockwise around the polygon cut open along the reference arcs.
    pub feet: [u32; 2],
    /// The arc as its sequence of signed reference-arc crossings.
    pub arc: Vec<i32>,
    pub endpoint: &'static str,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Checks {
    pub square_zero: bool,
    pub filtered: bool,
    pub symmetric: bool,
    pub ends_rank_one: bool,
    /// `None` when the diagram is too large for the check.
    pub grading_crosscheck: Option<bool>,
}

/// Everything computed for one open book.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub genus: usize,
    pub word: String,
    pub generators: usize,
    pub edges: usize,
    pub fingers: usize,
    pub analysis: Analysis,
    pub checks: Checks,
    pub rv_witness: Option<Witness>,
    pub timings: Timings,
}

impl Outcome {
    pub fn rank_g_minus_1(&self) -> usize {
        self.analysis.rank_at(self.genus as i32 - 1)
    }

    pub fn bottom_level_rank(&self) -> usize {
        self.analysis.level_ranks.get(&-(self.genus as i32)).copied().unwrap_or(0)
    }

    pub fn structural_ok(&self) -> bool {
        let c = &self.checks;
        c.square_zero && c.filtered && c.symmetric && c.ends_rank_one && c.grading_crosscheck != Some(false)
    }
}

fn ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

pub fn nice(ob: &OpenBook, basis: &ArcBasis, opt: &Options) -> Result<(Diagram, usize, Timings), CliError> {
    let mut timings = Timings::default();
    let t = Instant::now();
    let mut d = heegaard::build(ob, basis)?;
    timings.build_ms = ms(t);
    let t = Instant::now();
    let stats = heegaard::nicefy(&mut d, opt.max_moves)?;
    timings.nicefy_ms = ms(t);
    Ok((d, stats.fingers, timings))
}

/// The full pipeline with the standard basis.
pub fn run(ob: &OpenBook, opt: &Options) -> Result<Outcome, CliError> {
    run_with_basis(ob, &ArcBasis::standard(&ob.surface), opt)
}

pub fn run_with_basis(ob: &OpenBook, basis: &ArcBasis, opt: &Options) -> Result<Outcome, CliError> {
    let (d, fingers, mut timings) = nice(ob, basis, opt)?;
    let t = Instant::now();
    let c = floer::build_complex(&d, opt.cap)?;
    let square_zero = c.square_zero();
    if !square_zero {
        return Err(floer::FloerError::NotSquareZero.into());
    }
    let filtered = c.filtered();
    let grading_crosscheck = crosscheck(&d, &c)?;
    timings.complex_ms = ms(t);
    let t = Instant::now();
    let analysis = floer::analyze(&c)?;
    timings.homology_ms = ms(t);
    let t = Instant::now();
    let rv_witness = ob.non_right_veering_certificate(RV_BOUND)?.map(|w| Witness {
        feet: w.arc.endpoints().map_or([0, 0], |(a, b)| [a.side / 2, b.side / 2]),
        arc: ob.surface.word_of(&w.arc.cross),
        endpoint: match w.endpoint {
            Endpoint::Start => "start",
            Endpoint::End => "end",
        },
    });
    timings.veering_ms = ms(t);
    let g = ob.genus() as i32;
    let symmetric = analysis.ranks.iter().all(|(&k, &r)| analysis.rank_at(-k) == r);
    let ends_rank_one = analysis.rank_at(g) == 1 && analysis.rank_at(-g) == 1;
    Ok(Outcome {
        genus: ob.genus(),
        word: ob.word_string(),
        generators: c.len(),
        edges: c.edges(),
        fingers,
        analysis,
        checks: Checks { square_zero, filtered, symmetric, ends_rank_one, grading_crosscheck },
        rv_witness,
        timings,
    })
}

fn crosscheck(d: &Diagram, c: &FilteredComplex) -> Result<Option<bool>, CliError> {
    if c.len() > CROSSCHECK_LIMIT {
        return Ok(None);
    }
    let p = d.minus_sigma_domain()?;
    Ok(Some(d.grading_crosscheck(&p, &c.gens)))
}
