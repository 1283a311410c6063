//! The four subcommands. Each returns its report files; writing them is left
//! to [`crate::emit`].

use anyhow::{bail, Result};
use cogrowth::cayley::{ball, finite_structure, folner_defect, right_indegree_stats, Side};
use cogrowth::cogrowth::{
    count_vectors, default_tracked, gamma_prime, verify_convolution, CogrowthTable, RateEstimate,
};
use cogrowth::montecarlo::{block_count, coincidence_hits, local_hits, WalkSample};
use cogrowth::numeric::ratio_to_f64;
use cogrowth::operator::{operator_report, OperatorOptions};
use cogrowth::{Element, Semigroup};
use num_bigint::BigUint;
use serde::Serialize;

use crate::args::{
    CogrowthArgs, Command, Event, Format, OperatorArgs, SimulateArgs, StructureArgs,
};
use crate::input::resolve;
use crate::report::{csv, decimal, decimals, Envelope, Fraction};

/// Report files of one run. The first file is what goes to standard output
/// when no output directory is given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub files: Vec<(String, String)>,
}

impl Output {
    pub fn primary(&self) -> &str {
        &self.files[0].1
    }
}

pub fn run(command: &Command) -> Result<Output> {
    match command {
        Command::Cogrowth(a) => cogrowth_cmd(command, a),
        Command::Operator(a) => operator_cmd(command, a),
        Command::Structure(a) => structure_cmd(command, a),
        Command::Simulate(a) => simulate_cmd(command, a),
    }
}

#[derive(Serialize)]
struct RateJson {
    value: f64,
    horizon: usize,
    certified_lower_bound: bool,
    window: [usize; 2],
    argmax: Option<usize>,
}

impl From<&RateEstimate> for RateJson {
    fn from(r: &RateEstimate) -> Self {
        RateJson {
            value: r.value,
            horizon: r.horizon,
            certified_lower_bound: r.certified_lower_bound,
            window: [
                r.window.first().copied().unwrap_or(0),
                r.window.last().copied().unwrap_or(0),
            ],
            argmax: r.argmax,
        }
    }
}

#[derive(Serialize)]
struct TrackedJson {
    element: String,
    lambda: Vec<String>,
    local_rate: Option<RateJson>,
}

#[derive(Serialize)]
struct ConvolutionJson {
    passed: bool,
    enumerated_up_to: usize,
    failure: Option<String>,
}

#[derive(Serialize)]
struct CogrowthResult {
    horizon: usize,
    graded: bool,
    gamma_limit: usize,
    tracked: Vec<TrackedJson>,
    gamma_prime: Vec<String>,
    gamma: Vec<String>,
    gamma_rate: RateJson,
    convolution_check: ConvolutionJson,
}

fn tracked_elements(sg: &mut Semigroup, words: &[String]) -> Result<Vec<Element>> {
    if words.is_empty() {
        return Ok(default_tracked(sg));
    }
    let mut out = Vec::new();
    for w in words {
        let e = sg.parse_element(w)?;
        if !out.contains(&e) {
            out.push(e);
        }
    }
    Ok(out)
}

fn check_horizon(n: usize) -> Result<()> {
    if n == 0 {
        bail!("horizon -N must be at least 1");
    }
    Ok(())
}

fn cogrowth_cmd(command: &Command, a: &CogrowthArgs) -> Result<Output> {
    check_horizon(a.horizon)?;
    let mut r = resolve(&a.input, a.common.cap)?;
    let info = r.info(&a.input);
    let sg = &mut r.session;
    let tracked = tracked_elements(sg, &a.track)?;
    let table = CogrowthTable::compute(sg, a.horizon, &tracked, a.common.cap)?;
    let names: Vec<String> = tracked.iter().map(|&s| sg.render(s)).collect();
    let gamma_rate = table.gamma_rate();

    let rows_end = 2 * a.horizon;
    let mut header = vec!["n".to_string()];
    header.extend(names.iter().map(|n| format!("lambda_{n}")));
    header.extend(["gamma_prime".to_string(), "gamma".to_string()]);
    let rows: Vec<Vec<String>> = (0..=rows_end)
        .map(|n| {
            let mut row = vec![n.to_string()];
            for (_, l) in &table.lambda {
                row.push(match n {
                    1.. if n <= a.horizon => decimal(&l[n - 1]),
                    _ => String::new(),
                });
            }
            row.push(decimal(&table.gamma_prime[n]));
            row.push(table.gamma.get(n).map(decimal).unwrap_or_default());
            row
        })
        .collect();
    let table_csv = csv(&header, &rows);

    let mut rate_rows = vec![rate_row("gamma", &gamma_rate)];
    let mut tracked_json = Vec::new();
    for ((_, l), name) in table.lambda.iter().zip(&names) {
        let rate = cogrowth::cogrowth::local_rate(l).ok();
        if let Some(rate) = &rate {
            rate_rows.push(rate_row(&format!("lambda_{name}"), rate));
        }
        tracked_json.push(TrackedJson {
            element: name.clone(),
            lambda: decimals(l),
            local_rate: rate.as_ref().map(RateJson::from),
        });
    }
    let rates_csv = csv(
        &[
            "quantity",
            "value",
            "horizon",
            "certified_lower_bound",
            "window_start",
            "window_end",
            "argmax",
        ]
        .map(String::from),
        &rate_rows,
    );

    let check = verify_convolution(sg, &table);
    let result = CogrowthResult {
        horizon: table.horizon,
        graded: table.graded,
        gamma_limit: table.gamma_limit(),
        tracked: tracked_json,
        gamma_prime: decimals(&table.gamma_prime),
        gamma: decimals(&table.gamma),
        gamma_rate: RateJson::from(&gamma_rate),
        convolution_check: ConvolutionJson {
            passed: check.passed,
            enumerated_up_to: check.enumerated_up_to,
            failure: check.failure,
        },
    };
    let json = Envelope::new(command, info, result).to_json();
    Ok(match a.common.format {
        Format::Json => Output {
            files: vec![("cogrowth.json".into(), json)],
        },
        Format::Csv => Output {
            files: vec![
                ("cogrowth.csv".into(), table_csv),
                ("rates.csv".into(), rates_csv),
            ],
        },
    })
}

fn rate_row(name: &str, r: &RateEstimate) -> Vec<String> {
    let j = RateJson::from(r);
    vec![
        name.to_string(),
        j.value.to_string(),
        j.horizon.to_string(),
        j.certified_lower_bound.to_string(),
        j.window[0].to_string(),
        j.window[1].to_string(),
        j.argmax.map(|x| x.to_string()).unwrap_or_default(),
    ]
}

#[derive(Serialize)]
struct WalkRowJson {
    n: usize,
    norm_squared: Fraction,
    norm: f64,
    root: f64,
}

#[derive(Serialize)]
struct OperatorResult {
    walk_norms: Vec<WalkRowJson>,
    spectral_radius_lower_bound: f64,
    /// Equals the global rate estimate over the same horizon.
    spectral_bound_times_rank: f64,
    walk_identity: WalkIdentityJson,
    norm_lower_bound: NormJson,
    rayleigh: RayleighJson,
    right_indegree: IndegreeJson,
}

#[derive(Serialize)]
struct WalkIdentityJson {
    passed: bool,
    checked_up_to: usize,
    failure: Option<usize>,
}

#[derive(Serialize)]
struct NormJson {
    value: f64,
    radius: usize,
    quotients: Vec<f64>,
}

#[derive(Serialize)]
struct RayleighJson {
    samples: usize,
    max_support: usize,
    seed: u64,
    max_quotient: f64,
}

#[derive(Serialize)]
struct IndegreeJson {
    known_bounded: Option<bool>,
    radius: usize,
    max_indegree: Vec<usize>,
    max_indegree_half_radius: Vec<usize>,
    growing: bool,
    witness: Vec<Option<String>>,
    inner_ball_quotient_bound: f64,
}

fn operator_cmd(command: &Command, a: &OperatorArgs) -> Result<Output> {
    check_horizon(a.horizon)?;
    let mut r = resolve(&a.input, a.common.cap)?;
    let info = r.info(&a.input);
    let sg = &mut r.session;
    let options = OperatorOptions {
        horizon: a.horizon,
        radius: a.radius,
        iterations: a.iterations,
        rayleigh_samples: a.rayleigh_samples,
        max_support: a.max_support,
        seed: a.seed,
        cap: a.common.cap,
    };
    let rep = operator_report(sg, &options)?;
    let rows: Vec<WalkRowJson> = rep
        .spectral
        .rows
        .iter()
        .map(|w| WalkRowJson {
            n: w.n,
            norm_squared: Fraction {
                numerator: decimal(w.norm_squared.numer()),
                denominator: decimal(w.norm_squared.denom()),
            },
            norm: w.norm,
            root: w.root,
        })
        .collect();
    let walk_csv = csv(
        &[
            "n",
            "norm_squared_numerator",
            "norm_squared_denominator",
            "norm",
            "root",
        ]
        .map(String::from),
        &rows
            .iter()
            .map(|w| {
                vec![
                    w.n.to_string(),
                    w.norm_squared.numerator.clone(),
                    w.norm_squared.denominator.clone(),
                    w.norm.to_string(),
                    w.root.to_string(),
                ]
            })
            .collect::<Vec<_>>(),
    );
    let iter_csv = csv(
        &["iteration", "quotient"].map(String::from),
        &rep.norm
            .quotients
            .iter()
            .enumerate()
            .map(|(i, q)| vec![i.to_string(), q.to_string()])
            .collect::<Vec<_>>(),
    );
    let result = OperatorResult {
        walk_norms: rows,
        spectral_radius_lower_bound: rep.spectral.value,
        spectral_bound_times_rank: rep.spectral.value * sg.rank() as f64,
        walk_identity: WalkIdentityJson {
            passed: rep.walk_identity.passed,
            checked_up_to: rep.walk_identity.checked_up_to,
            failure: rep.walk_identity.failure,
        },
        norm_lower_bound: NormJson {
            value: rep.norm.value,
            radius: a.radius,
            quotients: rep.norm.quotients.clone(),
        },
        rayleigh: RayleighJson {
            samples: a.rayleigh_samples,
            max_support: a.max_support,
            seed: a.seed,
            max_quotient: rep.rayleigh_max,
        },
        right_indegree: IndegreeJson {
            known_bounded: rep.indegree.known_bounded,
            radius: rep.indegree.radius,
            max_indegree: rep.indegree.max_indegree.clone(),
            max_indegree_half_radius: rep.indegree.max_indegree_half.clone(),
            growing: rep.indegree.growing,
            witness: rep.indegree.witness.clone(),
            inner_ball_quotient_bound: rep.indegree.inner_ball_quotient_bound,
        },
    };
    let json = Envelope::new(command, info, result).to_json();
    Ok(match a.common.format {
        Format::Json => Output {
            files: vec![("operator.json".into(), json)],
        },
        Format::Csv => Output {
            files: vec![
                ("operator.csv".into(), walk_csv),
                ("norm_iterates.csv".into(), iter_csv),
            ],
        },
    })
}

#[derive(Serialize)]
struct FiniteJson {
    order: usize,
    has_identity: bool,
    /// 1-based element indices; the adjoined identity, if any, is `order`.
    j_classes: Vec<Vec<usize>>,
    /// Pairs `[a, b]` of distinct class indices with class a ≤_J class b.
    j_order: Vec<[usize; 2]>,
    minimal_ideal: Vec<usize>,
    is_simple: bool,
    left_reversible: bool,
    klawe: bool,
    right_cancellative: bool,
}

#[derive(Serialize)]
struct FolnerJson {
    radius: usize,
    set_size: usize,
    right: String,
    right_value: f64,
    left: String,
    left_value: f64,
}

#[derive(Serialize)]
struct BallJson {
    radius: usize,
    size: usize,
    layer_sizes: Vec<usize>,
    max_right_indegree: Vec<usize>,
}

#[derive(Serialize)]
struct StructureResult {
    finite: Option<FiniteJson>,
    folner: Option<FolnerJson>,
    ball: Option<BallJson>,
}

fn structure_cmd(command: &Command, a: &StructureArgs) -> Result<Output> {
    if a.export_ball.is_some() && a.common.out.is_none() {
        bail!("--export-ball writes files and needs --out");
    }
    let mut r = resolve(&a.input, a.common.cap)?;
    let info = r.info(&a.input);
    let sg = &mut r.session;
    let is_table = sg.engine().table().is_some();
    if !is_table && a.folner_radius.is_none() && a.export_ball.is_none() {
        return Err(cogrowth::Error::Domain(
            "structure predicates need a finite_table engine; use --folner-radius or --export-ball for others"
                .into(),
        )
        .into());
    }
    let finite = if is_table {
        let rep = finite_structure(sg.engine())?;
        let one = |v: &[usize]| v.iter().map(|x| x + 1).collect::<Vec<_>>();
        let mut j_order = Vec::new();
        for (i, row) in rep.j_leq.iter().enumerate() {
            for (j, &leq) in row.iter().enumerate() {
                if leq && i != j {
                    j_order.push([i, j]);
                }
            }
        }
        Some(FiniteJson {
            order: rep.order,
            has_identity: rep.has_identity,
            j_classes: rep.j_classes.iter().map(|c| one(c)).collect(),
            j_order,
            minimal_ideal: one(&rep.minimal_ideal),
            is_simple: rep.is_simple,
            left_reversible: rep.left_reversible,
            klawe: rep.klawe,
            right_cancellative: rep.right_cancellative,
        })
    } else {
        None
    };

    let folner = match a.folner_radius {
        Some(m) => {
            let f = ball(sg, m, a.common.cap)?.elements().to_vec();
            let h: Vec<Element> = (0..sg.rank()).map(|i| sg.step(sg.root(), i)).collect();
            let right = folner_defect(sg, &f, &h, Side::Right)?;
            let left = folner_defect(sg, &f, &h, Side::Left)?;
            let val = |n: u64, d: u64| n as f64 / d as f64;
            Some(FolnerJson {
                radius: m,
                set_size: f.len(),
                right: right.to_string(),
                right_value: val(*right.numer(), *right.denom()),
                left: left.to_string(),
                left_value: val(*left.numer(), *left.denom()),
            })
        }
        None => None,
    };

    let mut files = Vec::new();
    let ball_json = match a.export_ball {
        Some(radius) => {
            let b = ball(sg, radius, a.common.cap)?;
            let stats = right_indegree_stats(&b);
            let elements: Vec<Vec<String>> = (0..b.len())
                .map(|pos| {
                    vec![
                        pos.to_string(),
                        b.layer_of(pos).to_string(),
                        sg.render(b.elements()[pos]),
                    ]
                })
                .collect();
            let mut edges = Vec::new();
            for pos in 0..b.len() {
                for i in 0..b.rank() {
                    if let Some(dst) = b.edge(pos, i) {
                        edges.push(vec![pos.to_string(), i.to_string(), dst.to_string()]);
                    }
                }
            }
            files.push((
                "ball_elements.csv".to_string(),
                csv(
                    &["element_id", "layer", "canonical_form"].map(String::from),
                    &elements,
                ),
            ));
            files.push((
                "ball_edges.csv".to_string(),
                csv(&["src_id", "gen_index", "dst_id"].map(String::from), &edges),
            ));
            Some(BallJson {
                radius,
                size: b.len(),
                layer_sizes: (0..=radius).map(|r| b.layer(r).len()).collect(),
                max_right_indegree: stats.max,
            })
        }
        None => None,
    };

    let result = StructureResult {
        finite,
        folner,
        ball: ball_json,
    };
    let mut out = Vec::new();
    match a.common.format {
        Format::Json => out.push((
            "structure.json".to_string(),
            Envelope::new(command, info, &result).to_json(),
        )),
        Format::Csv => {
            let mut rows = Vec::new();
            if let Some(f) = &result.finite {
                for (k, v) in [
                    ("order", f.order.to_string()),
                    ("has_identity", f.has_identity.to_string()),
                    ("j_class_count", f.j_classes.len().to_string()),
                    ("minimal_ideal_size", f.minimal_ideal.len().to_string()),
                    ("is_simple", f.is_simple.to_string()),
                    ("left_reversible", f.left_reversible.to_string()),
                    ("klawe", f.klawe.to_string()),
                    ("right_cancellative", f.right_cancellative.to_string()),
                ] {
                    rows.push(vec![k.to_string(), v]);
                }
            }
            if let Some(f) = &result.folner {
                rows.push(vec!["folner_right".into(), f.right.clone()]);
                rows.push(vec!["folner_left".into(), f.left.clone()]);
            }
            out.push((
                "structure.csv".to_string(),
                csv(&["property", "value"].map(String::from), &rows),
            ));
            if let Some(f) = &result.finite {
                let mut rows = Vec::new();
                for (c, class) in f.j_classes.iter().enumerate() {
                    for &x in class {
                        rows.push(vec![
                            x.to_string(),
                            c.to_string(),
                            f.minimal_ideal.contains(&x).to_string(),
                        ]);
                    }
                }
                rows.sort_by_key(|r| r[0].parse::<usize>().unwrap_or(0));
                out.push((
                    "j_classes.csv".to_string(),
                    csv(
                        &["element", "j_class", "in_minimal_ideal"].map(String::from),
                        &rows,
                    ),
                ));
            }
        }
    }
    out.extend(files);
    Ok(Output { files: out })
}

#[derive(Serialize)]
struct SimRow {
    n: usize,
    trials: u64,
    hits: u64,
    estimate: f64,
    stderr: f64,
    exact: Option<Fraction>,
    exact_value: Option<f64>,
}

#[derive(Serialize)]
struct SimulateResult {
    event: Event,
    target: Option<String>,
    seed: u64,
    rows: Vec<SimRow>,
}

/// Splits the trial blocks into contiguous ranges, one per worker.
fn parallel_hits<F>(sg: &Semigroup, trials: u64, threads: usize, count: F) -> u64
where
    F: Fn(&mut Semigroup, std::ops::Range<u64>) -> u64 + Sync,
{
    let blocks = block_count(trials);
    let workers = (threads.max(1) as u64).min(blocks.max(1));
    let per = blocks.div_ceil(workers);
    if workers <= 1 {
        return count(&mut sg.clone(), 0..blocks);
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let mut local = sg.clone();
                let count = &count;
                let range = (w * per).min(blocks)..((w + 1) * per).min(blocks);
                scope.spawn(move || count(&mut local, range))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .sum()
    })
}

fn simulate_cmd(command: &Command, a: &SimulateArgs) -> Result<Output> {
    check_horizon(a.horizon)?;
    if a.trials == 0 {
        bail!("--trials must be at least 1");
    }
    let mut r = resolve(&a.input, a.common.cap)?;
    let info = r.info(&a.input);
    let sg = &mut r.session;
    let target = match a.event {
        Event::Local => Some(sg.parse_element(&a.track)?),
        Event::Coincidence => None,
    };
    let exact_counts = match count_vectors(sg, a.horizon, a.common.cap) {
        Ok(v) => Some(v),
        Err(cogrowth::Error::Resource { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let gp = exact_counts.as_ref().map(|v| gamma_prime(v));
    let k = BigUint::from(sg.rank());
    let mut rows = Vec::with_capacity(a.horizon);
    for n in 1..=a.horizon {
        let hits = match target {
            Some(s) => parallel_hits(sg, a.trials, a.common.threads, |g, range| {
                local_hits(g, s, n, a.seed, a.trials, range)
            }),
            None => parallel_hits(sg, a.trials, a.common.threads, |g, range| {
                coincidence_hits(g, n, a.seed, a.trials, range)
            }),
        };
        let sample = WalkSample {
            seed: a.seed,
            n,
            trials: a.trials,
            hits,
        };
        let exact = match (target, &exact_counts, &gp) {
            (Some(s), Some(v), _) => Some((v[n - 1].get(s), k.pow(n as u32))),
            (None, _, Some(gp)) => Some((gp[2 * n].clone(), k.pow(2 * n as u32))),
            _ => None,
        };
        rows.push(SimRow {
            n,
            trials: a.trials,
            hits,
            estimate: sample.estimate(),
            stderr: sample.stderr(),
            exact_value: exact.as_ref().map(|(p, q)| ratio_to_f64(p, q)),
            exact: exact.map(|(p, q)| Fraction {
                numerator: decimal(&p),
                denominator: decimal(&q),
            }),
        });
    }
    let result = SimulateResult {
        event: a.event,
        target: target.map(|s| sg.render(s)),
        seed: a.seed,
        rows,
    };
    Ok(match a.common.format {
        Format::Json => Output {
            files: vec![(
                "simulate.json".into(),
                Envelope::new(command, info, &result).to_json(),
            )],
        },
        Format::Csv => {
            let rows: Vec<Vec<String>> = result
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.trials.to_string(),
                        r.hits.to_string(),
                        r.estimate.to_string(),
                        r.stderr.to_string(),
                        r.exact_value.map(|x| x.to_string()).unwrap_or_default(),
                    ]
                })
                .collect();
            Output {
                files: vec![(
                    "simulate.csv".into(),
                    csv(
                        &["n", "trials", "hits", "estimate", "stderr", "exact"].map(String::from),
                        &rows,
                    ),
                )],
            }
        }
    })
}
