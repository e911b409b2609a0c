//! Markdown scoreboards, cactus series and their CSV/SVG renderings.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::evaluation::{round2, RunRecord, ScoreCard, VirtualBest};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TimeKind {
    Cpu,
    Wall,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CactusSeries {
    pub solver: String,
    /// `(k, t)`: `k` benchmarks solved within `t` seconds each.
    pub points: Vec<(usize, BigRational)>,
}

/// Cactus series of one solver: solved times in ascending order.
pub fn cactus<'a>(solver: &str, runs: impl IntoIterator<Item = &'a RunRecord>, kind: TimeKind) -> CactusSeries {
    let mut times: Vec<BigRational> = runs
        .into_iter()
        .filter(|r| r.result.is_solved())
        .map(|r| match kind {
            TimeKind::Cpu => r.cpu_seconds.clone(),
            TimeKind::Wall => r.wall_seconds.clone(),
        })
        .collect();
    times.sort();
    CactusSeries {
        solver: solver.to_string(),
        points: times.into_iter().enumerate().map(|(i, t)| (i + 1, t)).collect(),
    }
}

pub const TABLE_HEADER: &str = "| Solver | Score | #sat | #unsat | CPU time (s) | Wall-clock (s) | Speedup | SotAC |";

fn opt2(x: &Option<BigRational>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), round2)
}

/// Markdown scoreboard: one row per card in the given order, then the
/// "Any solver" row when `any` is given.
pub fn render_table(cards: &[ScoreCard], any: Option<&VirtualBest>) -> String {
    let mut out = String::new();
    out.push_str(TABLE_HEADER);
    out.push('\n');
    out.push_str("|---|---:|---:|---:|---:|---:|---:|---:|\n");
    for c in cards {
        let name = if c.hors_concours {
            format!("{} (HC)", c.solver)
        } else {
            c.solver.clone()
        };
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            escape_md(&name),
            c.score,
            c.num_sat,
            c.num_unsat,
            opt2(&c.mean_cpu),
            opt2(&c.mean_wall),
            opt2(&c.speedup),
            opt2(&c.sotac)
        );
    }
    if let Some(vb) = any {
        let _ = writeln!(out, "| Any solver | {} | {} | {} | | | | |", vb.score, vb.num_sat, vb.num_unsat);
    }
    out
}

fn escape_md(s: &str) -> String {
    s.replace('|', "\\|")
}

/// Machine-readable scorecards, numeric columns rounded to two decimals.
pub fn scorecards_csv(cards: &[ScoreCard]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record([
        "solver", "rank", "place", "hors_concours", "tied", "score", "sat", "unsat", "cpu_seconds", "wall_seconds", "speedup", "sotac",
    ]);
    let opt = |x: &Option<BigRational>| x.as_ref().map(round2).unwrap_or_default();
    for c in cards {
        let _ = w.write_record([
            c.solver.clone(),
            c.rank.map(|r| r.to_string()).unwrap_or_default(),
            c.place.map(|r| r.to_string()).unwrap_or_default(),
            c.hors_concours.to_string(),
            c.tied.to_string(),
            c.score.to_string(),
            c.num_sat.to_string(),
            c.num_unsat.to_string(),
            opt(&c.mean_cpu),
            opt(&c.mean_wall),
            opt(&c.speedup),
            opt(&c.sotac),
        ]);
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv writes utf-8")
}

/// Exact decimal rendering when the denominator allows it, else six places.
fn decimal(x: &BigRational) -> String {
    let mut d = x.denom().clone();
    let mut places = 0u32;
    for p in [2u32, 5] {
        while (&d % p).is_zero() {
            d /= p;
        }
    }
    if d == 1.into() {
        while !(x * BigRational::from_integer(num_bigint::BigInt::from(10).pow(places))).is_integer() {
            places += 1;
        }
    } else {
        places = 6;
    }
    if places == 0 {
        return x.to_integer().to_string();
    }
    let scale = num_bigint::BigInt::from(10).pow(places);
    let half = BigRational::new(1.into(), 2.into());
    let n = (x * BigRational::from_integer(scale.clone()) + half).floor().to_integer();
    let int = &n / &scale;
    let frac = (&n % &scale).to_string();
    format!("{int}.{frac:0>width$}", width = places as usize)
}

pub fn cactus_csv(series: &[CactusSeries]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record(["solver", "solved_count", "time_seconds"]);
    for s in series {
        for (k, t) in &s.points {
            let _ = w.write_record([s.solver.clone(), k.to_string(), decimal(t)]);
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv writes utf-8")
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxisConfig {
    pub log_time: bool,
    /// Smallest plotted time on a log axis.
    pub epsilon: f64,
    pub width: u32,
    pub height: u32,
    pub title: String,
}

impl Default for AxisConfig {
    fn default() -> Self {
        AxisConfig {
            log_time: false,
            epsilon: 0.01,
            width: 640,
            height: 400,
            title: String::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Svg {
    pub text: String,
    /// Solvers skipped for having no points.
    pub skipped: Vec<String>,
}

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c if (c as u32) < 0x20 && !matches!(c, '\t' | '\n' | '\r') => out.push(' '),
            c => out.push(c),
        }
    }
    out
}

/// Standalone SVG cactus plot: solved count on x, time on y.
pub fn render_cactus_svg(series: &[CactusSeries], axis: &AxisConfig) -> Svg {
    let skipped: Vec<String> = series.iter().filter(|s| s.points.is_empty()).map(|s| s.solver.clone()).collect();
    let drawn: Vec<&CactusSeries> = series.iter().filter(|s| !s.points.is_empty()).collect();
    let (w, h) = (axis.width.max(200) as f64, axis.height.max(150) as f64);
    let (left, right, top, bottom) = (60.0, 160.0, 30.0, 40.0);
    let (pw, ph) = (w - left - right, h - top - bottom);
    let eps = if axis.epsilon.is_finite() && axis.epsilon > 0.0 { axis.epsilon } else { 0.01 };

    let tval = |t: &BigRational| -> f64 {
        let v = t.to_f64().unwrap_or(0.0);
        if axis.log_time {
            v.max(eps).log10()
        } else {
            v
        }
    };
    let max_k = drawn.iter().map(|s| s.points.len()).max().unwrap_or(0).max(1) as f64;
    let ys: Vec<f64> = drawn.iter().flat_map(|s| s.points.iter().map(|(_, t)| tval(t))).collect();
    let (mut ymin, mut ymax) = if axis.log_time {
        (
            ys.iter().cloned().fold(f64::INFINITY, f64::min).min(eps.log10()),
            ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        )
    } else {
        (0.0, ys.iter().cloned().fold(0.0, f64::max))
    };
    if !ymin.is_finite() {
        ymin = 0.0;
    }
    if !ymax.is_finite() || ymax <= ymin {
        ymax = ymin + 1.0;
    }
    let px = |k: f64| left + k / max_k * pw;
    let py = |y: f64| top + ph - (y - ymin) / (ymax - ymin) * ph;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    if !axis.title.is_empty() {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="18" font-size="14" text-anchor="middle" font-family="sans-serif">{}</text>"#,
            left + pw / 2.0,
            xml_escape(&axis.title)
        );
    }
    let _ = writeln!(
        out,
        r#"<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    let y_label = if axis.log_time { "time (s, log)" } else { "time (s)" };
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle" font-family="sans-serif">solved benchmarks</text>"#,
        left + pw / 2.0,
        h - 8.0
    );
    let _ = writeln!(
        out,
        r#"<text x="14" y="{:.2}" font-size="12" text-anchor="middle" font-family="sans-serif" transform="rotate(-90 14 {:.2})">{y_label}</text>"#,
        top + ph / 2.0,
        top + ph / 2.0
    );
    for (label, y) in [(ymin, ymin), (ymax, ymax)] {
        let shown = if axis.log_time { 10f64.powf(label) } else { label };
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="end" font-family="sans-serif">{}</text>"#,
            left - 4.0,
            py(y) + 3.0,
            trim_float(shown)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="middle" font-family="sans-serif">{}</text>"#,
        px(max_k),
        top + ph + 14.0,
        max_k as usize
    );
    for (i, s) in drawn.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .map(|(k, t)| format!("{:.2},{:.2}", px(*k as f64), py(tval(t))))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"><title>{}</title></polyline>"#,
            pts.join(" "),
            xml_escape(&s.solver)
        );
        let ly = top + 10.0 + 16.0 * i as f64;
        let lx = left + pw + 10.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#,
            lx + 18.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" font-family="sans-serif">{}</text>"#,
            lx + 22.0,
            ly + 4.0,
            xml_escape(&s.solver)
        );
    }
    out.push_str("</svg>\n");
    Svg { text: out, skipped }
}

fn trim_float(v: f64) -> String {
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}
