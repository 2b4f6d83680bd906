use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::report::load_campaign;
use super::write_atomic;
use crate::engine::Algorithm;
use crate::error::{Error, Result};
use crate::metrics::{normalized_hypervolume, NormalizationBounds};
use crate::problems::ProblemId;

/// Normalized HV, run index and final objectives of one run.
type Ranked<'a> = (f64, usize, &'a Vec<Vec<f64>>);

/// Filters on the campaign's instances. `None` keeps everything, except for
/// objective counts, where `None` means two.
#[derive(Debug, Clone, Default)]
pub struct PlotSelection {
    pub problems: Option<Vec<ProblemId>>,
    pub objectives: Option<Vec<usize>>,
    pub algorithms: Option<Vec<Algorithm>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlotOutcome {
    Written(Vec<PathBuf>),
    /// Nothing in the campaign matched the selection.
    Empty,
}

/// One SVG per selected (problem, algorithm) with two objectives: the final
/// population of the best-HV run as circles and of the median-HV run as
/// crosses. With an even run count the lower median is used. Files go to
/// `out_dir/<problem>_m2_<algorithm>.svg`.
pub fn plot(dir: &Path, selection: &PlotSelection, out_dir: &Path) -> Result<PlotOutcome> {
    let objectives = selection.objectives.clone().unwrap_or_else(|| vec![2]);
    if let Some(m) = objectives.iter().find(|&&m| m != 2) {
        return Err(Error::Unsupported(format!(
            "scatter plots need two objectives, got m={m}"
        )));
    }
    let (_, runs, _) = load_campaign(dir)?;
    let mut instances: BTreeMap<ProblemId, Vec<_>> = BTreeMap::new();
    for r in runs.iter().filter(|r| r.run.m == 2) {
        instances.entry(r.run.problem).or_default().push(r);
    }

    let mut written = Vec::new();
    for (problem, members) in instances {
        if selection
            .problems
            .as_ref()
            .is_some_and(|p| !p.contains(&problem))
        {
            continue;
        }
        let bounds =
            NormalizationBounds::from_union(members.iter().map(|r| r.objectives.as_slice()))?;
        let mut by_alg: BTreeMap<Algorithm, Vec<Ranked>> = BTreeMap::new();
        for r in &members {
            let hv = normalized_hypervolume(&r.objectives, &bounds)?;
            by_alg
                .entry(r.run.algorithm)
                .or_default()
                .push((hv, r.run.run, &r.objectives));
        }
        for (algorithm, mut ranked) in by_alg {
            if selection
                .algorithms
                .as_ref()
                .is_some_and(|a| !a.contains(&algorithm))
            {
                continue;
            }
            ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let best = ranked.last().expect("at least one run");
            let median = &ranked[(ranked.len() - 1) / 2];
            let title = format!(
                "{problem} {algorithm}: best run {} (HV {:.4}), median run {} (HV {:.4})",
                best.1, best.0, median.1, median.0
            );
            let svg = scatter_svg(&title, best.2, median.2);
            let path = out_dir.join(format!("{problem}_m2_{algorithm}.svg"));
            write_atomic(&path, svg.as_bytes())?;
            written.push(path);
        }
    }
    Ok(if written.is_empty() {
        PlotOutcome::Empty
    } else {
        PlotOutcome::Written(written)
    })
}

const WIDTH: f64 = 520.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 52.0;
const TICKS: usize = 5;

/// Standalone SVG scatter of two point sets in the `(f1, f2)` plane.
pub fn scatter_svg(title: &str, circles: &[Vec<f64>], crosses: &[Vec<f64>]) -> String {
    let all = circles.iter().chain(crosses);
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for p in all {
        x0 = x0.min(p[0]);
        x1 = x1.max(p[0]);
        y0 = y0.min(p[1]);
        y1 = y1.max(p[1]);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let pad = |lo: f64, hi: f64| {
        let span = if hi > lo { hi - lo } else { 1.0 };
        (lo - 0.05 * span, hi + 0.05 * span)
    };
    let (x0, x1) = pad(x0, x1);
    let (y0, y1) = pad(y0, y1);
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| TOP + plot_h - (y - y0) / (y1 - y0) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="13">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let (xv, yv) = (x0 + t * (x1 - x0), y0 + t * (y1 - y0));
        let (px, py) = (sx(xv), sy(yv));
        let base = TOP + plot_h;
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{base}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            base + 5.0,
            base + 18.0,
            tick_label(xv)
        );
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/><text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            py + 4.0,
            tick_label(yv)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">f1</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">f2</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    let _ = writeln!(s, r##"<g fill="none" stroke="#1f4fd1">"##);
    for p in circles {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="4"/>"#,
            sx(p[0]),
            sy(p[1])
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g stroke="#1a8f2e" stroke-width="1.5">"##);
    for p in crosses {
        let (cx, cy) = (sx(p[0]), sy(p[1]));
        let _ = writeln!(
            s,
            r#"<path d="M{:.2} {:.2}L{:.2} {:.2}M{:.2} {:.2}L{:.2} {:.2}"/>"#,
            cx - 4.0,
            cy - 4.0,
            cx + 4.0,
            cy + 4.0,
            cx - 4.0,
            cy + 4.0,
            cx + 4.0,
            cy - 4.0
        );
    }
    let _ = writeln!(s, "</g>");

    let lx = WIDTH - RIGHT - 110.0;
    let _ = writeln!(
        s,
        r##"<circle cx="{lx}" cy="{}" r="4" fill="none" stroke="#1f4fd1"/><text x="{}" y="{}">best</text>"##,
        TOP + 14.0,
        lx + 10.0,
        TOP + 18.0
    );
    let _ = writeln!(
        s,
        r##"<path d="M{} {}L{} {}M{} {}L{} {}" stroke="#1a8f2e" stroke-width="1.5"/><text x="{}" y="{}">median</text>"##,
        lx - 4.0,
        TOP + 28.0,
        lx + 4.0,
        TOP + 36.0,
        lx - 4.0,
        TOP + 36.0,
        lx + 4.0,
        TOP + 28.0,
        lx + 10.0,
        TOP + 36.0
    );
    s.push_str("</svg>\n");
    s
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
