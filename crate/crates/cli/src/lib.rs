//! Command implementations behind the `djpuzzle` binary. Every command takes
//! already-read inputs and returns the text destined for standard output, so
//! the same functions serve the binary and the tests.

use std::fmt::Write as _;
use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;

use djpuzzle::charmap::{check_dual_nonsingular, is_characteristic};
use djpuzzle::io::{
    parse_maps, render_duals_structured, render_duals_text, render_maps_structured, render_maps_text, MapBlock,
};
use djpuzzle::{
    canonicalize, dualize, garrison_scott_with, idcm_garrison_scott_with, primal, project, solve, CharMap, Error, Face,
    Method, SearchConfig, SimplicialComplex, WedgeTuple,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{context}: {source}")]
    Input { context: String, source: Error },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("{method} disagrees with {reference} for J=({j}): {found} classes against {expected}; first difference:\n{diff}")]
    MismatchedCounts {
        j: String,
        reference: String,
        method: String,
        expected: usize,
        found: usize,
        diff: String,
    },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Input { source, .. } | CliError::Core(source) => source.code(),
            CliError::Io { .. } => "E_IO",
            CliError::Usage(_) => "E_USAGE",
            CliError::MismatchedCounts { .. } => "E_MISMATCHED_COUNTS",
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// A named input, typically a file already read into memory.
#[derive(Clone, Debug)]
pub struct InputFile {
    pub path: String,
    pub text: String,
}

impl InputFile {
    pub fn read(path: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.to_string(),
            msg: e.to_string(),
        })?;
        Ok(InputFile {
            path: path.to_string(),
            text,
        })
    }

    pub fn inline(name: &str, text: &str) -> Self {
        InputFile {
            path: name.to_string(),
            text: text.to_string(),
        }
    }

    fn blame(&self) -> impl Fn(Error) -> CliError + '_ {
        move |source| CliError::Input {
            context: self.path.clone(),
            source,
        }
    }

    pub fn complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::parse(&self.text).map_err(self.blame())
    }

    pub fn maps(&self) -> Result<Vec<MapBlock>> {
        parse_maps(&self.text).map_err(self.blame())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnumMethod {
    /// Branch and bound on the (wedged) complex.
    Gs,
    /// Branch and bound over injective dual maps; misses classes over
    /// products of simplices.
    IdcmGs,
    /// Constructive puzzle search over the board of J.
    Puzzle,
    /// Exhaustive puzzle oracle; tiny boards only.
    NaivePuzzle,
}

impl EnumMethod {
    pub fn name(self) -> &'static str {
        match self {
            EnumMethod::Gs => "gs",
            EnumMethod::IdcmGs => "idcm-gs",
            EnumMethod::Puzzle => "puzzle",
            EnumMethod::NaivePuzzle => "naive-puzzle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub workers: usize,
    pub cap_nodes: u128,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            workers: 1,
            cap_nodes: djpuzzle::puzzle::DEFAULT_NODE_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub algorithm: String,
    pub m: usize,
    pub n: usize,
    pub j: Option<String>,
    pub classes: usize,
    pub ms: f64,
    pub nodes: u64,
}

impl RunReport {
    pub fn render_line(&self) -> String {
        format!(
            "{}: m={} n={} J={} classes={} time={:.3}ms nodes={}",
            self.algorithm,
            self.m,
            self.n,
            self.j.as_deref().unwrap_or("-"),
            self.classes,
            self.ms,
            self.nodes
        )
    }
}

pub fn render_reports(reports: &[RunReport]) -> String {
    serde_json::to_string_pretty(reports).expect("serializable") + "\n"
}

/// Classes over a complex, in the frame they were enumerated in.
#[derive(Clone, Debug)]
pub struct Enumerated {
    pub complex: SimplicialComplex,
    pub classes: Vec<CharMap>,
    pub report: RunReport,
}

/// Runs one enumerator. Direct methods work on `wedged(k, J)` when `J` is
/// given and on `k` itself otherwise, always after relabeling facet-first;
/// puzzle methods treat `k` as the seed and need `J`.
pub fn run_method(
    k: &SimplicialComplex,
    method: EnumMethod,
    j: Option<&WedgeTuple>,
    opts: &RunOptions,
) -> Result<Enumerated> {
    let start = Instant::now();
    let (complex, classes, nodes) = match method {
        EnumMethod::Gs | EnumMethod::IdcmGs => {
            let target = match j {
                Some(j) => k.wedged(j)?.0,
                None => k.clone(),
            };
            let (framed, _) = target.relabel_facet_first();
            let (classes, nodes) = if method == EnumMethod::Gs {
                let run = garrison_scott_with(&framed, opts.workers)?;
                (run.classes, run.nodes)
            } else {
                let run = idcm_garrison_scott_with(&framed, opts.workers)?;
                (run.classes.iter().map(primal).collect(), run.nodes)
            };
            (framed, classes, nodes)
        }
        EnumMethod::Puzzle | EnumMethod::NaivePuzzle => {
            let j = j.ok_or_else(|| CliError::Usage(format!("--method {} needs --wedge-list", method.name())))?;
            let config = SearchConfig {
                workers: opts.workers,
                node_cap: opts.cap_nodes,
                ..SearchConfig::default()
            };
            let m = if method == EnumMethod::Puzzle {
                Method::Constructive
            } else {
                Method::Naive
            };
            let run = solve(k, j, m, &config)?;
            (run.complex, run.classes, run.seed_nodes + run.search_nodes)
        }
    };
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let report = RunReport {
        algorithm: method.name().to_string(),
        m: complex.m(),
        n: complex.n(),
        j: j.map(WedgeTuple::to_string),
        classes: classes.len(),
        ms,
        nodes,
    };
    Ok(Enumerated {
        complex,
        classes,
        report,
    })
}

fn parse_tuple(s: &str) -> Result<WedgeTuple> {
    WedgeTuple::parse(s).map_err(|source| CliError::Input {
        context: "--wedge-list".into(),
        source,
    })
}

fn render_classes(classes: &[CharMap], format: Format) -> String {
    match format {
        Format::Text => render_maps_text(classes),
        Format::Structured => render_maps_structured(classes),
    }
}

pub fn cmd_enumerate(
    complex: &InputFile,
    method: EnumMethod,
    wedge_list: Option<&str>,
    opts: &RunOptions,
    format: Format,
) -> Result<(String, RunReport)> {
    let k = complex.complex()?;
    let j = wedge_list.map(parse_tuple).transpose()?;
    let out = run_method(&k, method, j.as_ref(), opts)?;
    Ok((render_classes(&out.classes, format), out.report))
}

pub fn cmd_wedge(complex: &InputFile, wedge_list: &str, format: Format) -> Result<String> {
    let k = complex.complex()?;
    let j = parse_tuple(wedge_list)?;
    let (w, _) = k.wedged(&j)?;
    Ok(match format {
        Format::Text => w.render_text(),
        Format::Structured => w.render_structured() + "\n",
    })
}

fn canonical_block(matrix: &djpuzzle::BitMatrix, k: &SimplicialComplex, context: String) -> Result<CharMap> {
    if !k.is_facet_first() {
        return Err(CliError::Input {
            context,
            source: Error::NotFacetFirst,
        });
    }
    canonicalize(matrix, k).map_err(|source| CliError::Input { context, source })
}

/// Dualizes primal blocks and takes dual blocks back to their primal form.
pub fn cmd_dual(maps: &InputFile, complex: &InputFile, format: Format) -> Result<String> {
    let k = complex.complex()?;
    let mut out = Vec::new();
    for (i, block) in maps.maps()?.into_iter().enumerate() {
        let context = format!("{}: block {}", maps.path, i + 1);
        match block {
            MapBlock::Primal(matrix) => {
                let cm = canonical_block(&matrix, &k, context)?;
                let d = dualize(&cm);
                out.push(match format {
                    Format::Text => render_duals_text(&[d]),
                    Format::Structured => render_duals_structured(&[d]),
                });
            }
            MapBlock::Dual(d) => {
                if d.m() != k.m() || d.n() != k.n() || !check_dual_nonsingular(&d, &k) {
                    return Err(CliError::Input {
                        context,
                        source: Error::NonSingularityViolated,
                    });
                }
                out.push(render_classes(&[primal(&d)], format));
            }
        }
    }
    Ok(join_blocks(out, format))
}

fn join_blocks(blocks: Vec<String>, format: Format) -> String {
    match format {
        Format::Text => blocks.join("\n"),
        Format::Structured => {
            let values: Vec<serde_json::Value> = blocks
                .iter()
                .flat_map(|b| serde_json::from_str::<Vec<serde_json::Value>>(b).expect("rendered json"))
                .collect();
            serde_json::to_string_pretty(&values).expect("serializable") + "\n"
        }
    }
}

fn parse_face(spec: &str) -> Result<Face> {
    let usage = || CliError::Usage(format!("--face expects comma-separated vertices, got {spec:?}"));
    let vertices = spec
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| usage()))
        .collect::<Result<Vec<_>>>()?;
    Face::from_vertices(&vertices).map_err(|source| CliError::Input {
        context: "--face".into(),
        source,
    })
}

/// Projects every primal block onto the link of `face`. The link is relabeled
/// facet-first; a comment line lists the original vertex behind each label.
pub fn cmd_project(maps: &InputFile, complex: &InputFile, face: &str, format: Format) -> Result<String> {
    let k = complex.complex()?;
    let sigma = parse_face(face)?;
    let mut out = Vec::new();
    for (i, block) in maps.maps()?.into_iter().enumerate() {
        let context = format!("{}: block {}", maps.path, i + 1);
        let cm = match block {
            MapBlock::Primal(matrix) => canonical_block(&matrix, &k, context.clone())?,
            MapBlock::Dual(d) => primal(&d),
        };
        let framed = project(&cm, &sigma, &k).map_err(|source| CliError::Input { context, source })?;
        out.push(match format {
            Format::Text => {
                let labels: Vec<String> = framed.labels.iter().map(usize::to_string).collect();
                format!("# link vertices {}\n{}", labels.join(" "), framed.map.render())
            }
            Format::Structured => render_maps_structured(&[framed.map]),
        });
    }
    Ok(join_blocks(out, format))
}

/// Runs every method on every `J` and tabulates the reports once the class
/// sets have been confirmed identical.
pub fn cmd_bench(
    seed: &InputFile,
    wedge_lists: &[String],
    methods: &[EnumMethod],
    opts: &RunOptions,
    format: Format,
) -> Result<(String, Vec<RunReport>)> {
    if methods.is_empty() || wedge_lists.is_empty() {
        return Err(CliError::Usage(
            "bench needs at least one method and one --wedge-list".into(),
        ));
    }
    let k = seed.complex()?;
    let mut reports = Vec::new();
    for spec in wedge_lists {
        let j = parse_tuple(spec)?;
        let runs = methods
            .iter()
            .map(|&m| run_method(&k, m, Some(&j), opts))
            .collect::<Result<Vec<_>>>()?;
        let reference = &runs[0];
        for run in &runs[1..] {
            if run.classes != reference.classes {
                return Err(mismatch(&j, reference, run));
            }
        }
        reports.extend(runs.into_iter().map(|r| r.report));
    }
    let text = match format {
        Format::Text => render_table(&reports),
        Format::Structured => render_reports(&reports),
    };
    Ok((text, reports))
}

fn mismatch(j: &WedgeTuple, reference: &Enumerated, run: &Enumerated) -> CliError {
    let (a, b) = (&reference.classes, &run.classes);
    let at = (0..a.len().max(b.len())).find(|&i| a.get(i) != b.get(i)).unwrap_or(0);
    let show = |c: Option<&CharMap>| c.map_or("(none)\n".to_string(), CharMap::render);
    CliError::MismatchedCounts {
        j: j.to_string(),
        reference: reference.report.algorithm.clone(),
        method: run.report.algorithm.clone(),
        expected: a.len(),
        found: b.len(),
        diff: format!(
            "class {}:\n{} has\n{}{} has\n{}",
            at + 1,
            reference.report.algorithm,
            show(a.get(at)),
            run.report.algorithm,
            show(b.get(at))
        ),
    }
}

pub fn render_table(reports: &[RunReport]) -> String {
    let header = ["J", "method", "m", "n", "classes", "nodes", "ms"];
    let rows: Vec<[String; 7]> = reports
        .iter()
        .map(|r| {
            [
                r.j.clone().unwrap_or_else(|| "-".into()),
                r.algorithm.clone(),
                r.m.to_string(),
                r.n.to_string(),
                r.classes.to_string(),
                r.nodes.to_string(),
                format!("{:.3}", r.ms),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .enumerate()
            .map(|(i, (c, w))| if i < 2 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header.to_vec(), &mut out);
    for row in &rows {
        line(row.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

/// Validates a complex and, optionally, every map in a map file over it.
pub fn cmd_check(complex: &InputFile, maps: Option<&InputFile>) -> Result<String> {
    let k = complex.complex()?;
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut out = format!(
        "complex: m={} n={} facets={} facet-first={} pseudo-manifold={}\n",
        k.m(),
        k.n(),
        k.facet_masks().len(),
        yes(k.is_facet_first()),
        yes(k.is_pseudo_manifold())
    );
    if let Some(maps) = maps {
        for (i, block) in maps.maps()?.into_iter().enumerate() {
            let context = format!("{}: block {}", maps.path, i + 1);
            let ok = match &block {
                MapBlock::Primal(matrix) => is_characteristic(matrix, &k).map_err(|source| CliError::Input {
                    context: context.clone(),
                    source,
                })?,
                MapBlock::Dual(d) => d.m() == k.m() && d.n() == k.n() && check_dual_nonsingular(d, &k),
            };
            if !ok {
                return Err(CliError::Input {
                    context,
                    source: Error::NonSingularityViolated,
                });
            }
            let _ = writeln!(out, "block {}: characteristic", i + 1);
        }
    }
    Ok(out)
}
