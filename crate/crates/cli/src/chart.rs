//! Report-CSV parsing and hand-emitted SVG charts.
//!
//! Two chart kinds exist, both plotting one series per model over the arity
//! axis: the minimal-budget table (y = synapse budget, integer) and the
//! single-synapse capacity table (y = capacity in bits). LTU points are
//! filled black squares, dendritic-model points are filled red circles, and a
//! budget cell of the form ">K" — a search that hit its cap without reaching
//! the target — is drawn as an open marker at height K.

use std::fmt;

use nltu_core::experiments::CSV_HEADER;
use nltu_core::search::ModelKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ChartKind {
    Figure2,
    Figure3,
}

impl fmt::Display for ChartKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartKind::Figure2 => write!(f, "figure2"),
            ChartKind::Figure3 => write!(f, "figure3"),
        }
    }
}

/// One parsed data row of a report CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvRow {
    pub n: usize,
    pub model: ModelKind,
    pub budget: String,
    pub function_count: u64,
    pub oracle_count: u64,
    pub capacity_bits: f64,
    pub paper_value: Option<u64>,
    pub matches_reference: Option<bool>,
}

/// Parses a report CSV, naming the offending line and column on any error.
/// Line numbers are 1-based with the header on line 1.
pub fn parse_report_csv(text: &str) -> Result<Vec<CsvRow>, String> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| "line 1: missing header".to_string())?;
    if header != CSV_HEADER {
        return Err(format!(
            "line 1: header is '{header}', expected '{CSV_HEADER}'"
        ));
    }
    let columns: Vec<&str> = CSV_HEADER.split(',').collect();
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns.len() {
            return Err(format!(
                "line {lineno}: {} fields, expected {}",
                fields.len(),
                columns.len()
            ));
        }
        let field = |col: &str| -> &str {
            fields[columns.iter().position(|&c| c == col).expect("known column")]
        };
        let parse_err =
            |col: &str, err: &dyn fmt::Display| format!("line {lineno}, column '{col}': {err}");

        let n: usize = field("n")
            .parse()
            .map_err(|e| parse_err("n", &e))?;
        let model: ModelKind = field("model")
            .parse()
            .map_err(|e| parse_err("model", &e))?;
        let budget = field("budget").to_string();
        if budget.strip_prefix('>').unwrap_or(&budget).parse::<u32>().is_err() {
            return Err(parse_err(
                "budget",
                &format!("'{budget}' is neither an integer nor '>K'"),
            ));
        }
        let function_count: u64 = field("function_count")
            .parse()
            .map_err(|e| parse_err("function_count", &e))?;
        let oracle_count: u64 = field("oracle_count")
            .parse()
            .map_err(|e| parse_err("oracle_count", &e))?;
        let capacity_bits: f64 = field("capacity_bits")
            .parse()
            .map_err(|e| parse_err("capacity_bits", &e))?;
        let paper_value = match field("paper_value") {
            "" => None,
            s => Some(s.parse::<u64>().map_err(|e| parse_err("paper_value", &e))?),
        };
        let matches_reference = match field("match") {
            "" => None,
            s => Some(s.parse::<bool>().map_err(|e| parse_err("match", &e))?),
        };
        rows.push(CsvRow {
            n,
            model,
            budget,
            function_count,
            oracle_count,
            capacity_bits,
            paper_value,
            matches_reference,
        });
    }
    if rows.is_empty() {
        return Err("no data rows after the header; refusing to draw an empty chart".to_string());
    }
    Ok(rows)
}

struct Point {
    n: usize,
    y: f64,
    /// False for ">K" budget cells; drawn as an open marker.
    reached: bool,
}

fn series(rows: &[CsvRow], model: ModelKind, kind: ChartKind) -> Result<Vec<Point>, String> {
    let mut points = Vec::new();
    for row in rows.iter().filter(|r| r.model == model) {
        let point = match kind {
            ChartKind::Figure2 => match row.budget.strip_prefix('>') {
                Some(cap) => Point {
                    n: row.n,
                    y: cap.parse::<u32>().map_err(|e| e.to_string())? as f64,
                    reached: false,
                },
                None => Point {
                    n: row.n,
                    y: row.budget.parse::<u32>().map_err(|e| e.to_string())? as f64,
                    reached: true,
                },
            },
            ChartKind::Figure3 => Point {
                n: row.n,
                y: row.capacity_bits,
                reached: true,
            },
        };
        points.push(point);
    }
    points.sort_by_key(|p| p.n);
    Ok(points)
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 610.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 385.0;
const LTU_COLOR: &str = "#000000";
const NLTU_COLOR: &str = "#d62728";

fn nice_step(raw: f64) -> f64 {
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let step = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    };
    step * mag
}

/// Renders the chart for `kind` from parsed rows. Pure function of its
/// inputs, so identical reports yield byte-identical SVG.
pub fn render_svg(rows: &[CsvRow], kind: ChartKind) -> Result<String, String> {
    let ltu = series(rows, ModelKind::Ltu, kind)?;
    let nltu = series(rows, ModelKind::Nltu, kind)?;
    if ltu.is_empty() && nltu.is_empty() {
        return Err("no rows for either model; nothing to draw".to_string());
    }

    let ns: Vec<usize> = ltu.iter().chain(&nltu).map(|p| p.n).collect();
    let n_min = *ns.iter().min().expect("nonempty") as f64;
    let n_max = *ns.iter().max().expect("nonempty") as f64;
    let y_max = ltu
        .iter()
        .chain(&nltu)
        .map(|p| p.y)
        .fold(1.0f64, f64::max);

    let x_span = (n_max - n_min).max(1.0);
    let x_of = |n: f64| LEFT + (n - n_min + 0.5) / (x_span + 1.0) * (RIGHT - LEFT);
    let y_step = nice_step(y_max / 5.0);
    let y_top = (y_max / y_step).ceil() * y_step;
    let y_of = |y: f64| BOTTOM - y / y_top * (BOTTOM - TOP);

    let (title, y_label) = match kind {
        ChartKind::Figure2 => (
            "Synapses per input needed to reach separable capacity",
            "synapse budget k",
        ),
        ChartKind::Figure3 => (
            "Capacity at one synapse per input",
            "capacity (bits)",
        ),
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\">\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>\n"
    ));
    svg.push_str(&format!(
        "  <text x=\"{:.1}\" y=\"26\" font-size=\"17\" text-anchor=\"middle\">{title}</text>\n",
        (LEFT + RIGHT) / 2.0
    ));

    // Axes.
    svg.push_str(&format!(
        "  <line x1=\"{LEFT}\" y1=\"{BOTTOM}\" x2=\"{RIGHT}\" y2=\"{BOTTOM}\" stroke=\"#000\"/>\n"
    ));
    svg.push_str(&format!(
        "  <line x1=\"{LEFT}\" y1=\"{TOP}\" x2=\"{LEFT}\" y2=\"{BOTTOM}\" stroke=\"#000\"/>\n"
    ));

    // X ticks: one per integer arity present.
    let mut n_tick = n_min as usize;
    while n_tick <= n_max as usize {
        let x = x_of(n_tick as f64);
        svg.push_str(&format!(
            "  <line x1=\"{x:.2}\" y1=\"{BOTTOM}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#000\"/>\n",
            BOTTOM + 5.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\">{n_tick}</text>\n",
            BOTTOM + 20.0
        ));
        n_tick += 1;
    }
    svg.push_str(&format!(
        "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"14\" text-anchor=\"middle\">number of inputs n</text>\n",
        (LEFT + RIGHT) / 2.0,
        BOTTOM + 42.0
    ));

    // Y ticks.
    let mut y_tick = 0.0f64;
    while y_tick <= y_top + 1e-9 {
        let y = y_of(y_tick);
        svg.push_str(&format!(
            "  <line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{LEFT}\" y2=\"{y:.2}\" stroke=\"#000\"/>\n",
            LEFT - 5.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"end\">{}</text>\n",
            LEFT - 9.0,
            y + 4.0,
            format_tick(y_tick)
        ));
        y_tick += y_step;
    }
    svg.push_str(&format!(
        "  <text x=\"18\" y=\"{:.1}\" font-size=\"14\" text-anchor=\"middle\" \
         transform=\"rotate(-90 18 {:.1})\">{y_label}</text>\n",
        (TOP + BOTTOM) / 2.0,
        (TOP + BOTTOM) / 2.0
    ));

    // Series: connecting line then markers, so markers sit on top.
    for (points, color, is_ltu) in [(&ltu, LTU_COLOR, true), (&nltu, NLTU_COLOR, false)] {
        if points.is_empty() {
            continue;
        }
        let path: Vec<String> = points
            .iter()
            .map(|p| format!("{:.2},{:.2}", x_of(p.n as f64), y_of(p.y)))
            .collect();
        if path.len() > 1 {
            svg.push_str(&format!(
                "  <polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
                path.join(" ")
            ));
        }
        for p in points.iter() {
            let x = x_of(p.n as f64);
            let y = y_of(p.y);
            let fill = if p.reached { color } else { "none" };
            if is_ltu {
                svg.push_str(&format!(
                    "  <rect x=\"{:.2}\" y=\"{:.2}\" width=\"9\" height=\"9\" fill=\"{fill}\" \
                     stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
                    x - 4.5,
                    y - 4.5
                ));
            } else {
                svg.push_str(&format!(
                    "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"5\" fill=\"{fill}\" \
                     stroke=\"{color}\" stroke-width=\"1.5\"/>\n"
                ));
            }
        }
    }

    // Legend.
    let lx = LEFT + 14.0;
    let ly = TOP + 10.0;
    svg.push_str(&format!(
        "  <rect x=\"{:.1}\" y=\"{:.1}\" width=\"9\" height=\"9\" fill=\"{LTU_COLOR}\"/>\n",
        lx,
        ly - 4.5
    ));
    svg.push_str(&format!(
        "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"13\">LTU</text>\n",
        lx + 16.0,
        ly + 4.0
    ));
    svg.push_str(&format!(
        "  <circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"5\" fill=\"{NLTU_COLOR}\"/>\n",
        lx + 4.5,
        ly + 20.0
    ));
    svg.push_str(&format!(
        "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"13\">nLTU</text>\n",
        lx + 16.0,
        ly + 24.0
    ));

    svg.push_str("</svg>\n");
    Ok(svg)
}

fn format_tick(v: f64) -> String {
    if (v - v.round()).abs() < 1e-9 {
        format!("{}", v.round() as i64)
    } else {
        format!("{v:.1}")
    }
}
