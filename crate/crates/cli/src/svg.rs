//! Static SVG rendering of a scaling run: per-backend scatter with standard
//! error bars and the fitted quadratic curves.

use std::fmt::Write as _;

use qae_core::scaling::{QuadraticFit, ScalingRecord};

use crate::csvfmt::{RunMeta, TOOL_VERSION};

const WIDTH: f64 = 860.0;
const HEIGHT: f64 = 560.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_TOP: f64 = 36.0;
const MARGIN_BOTTOM: f64 = 56.0;

const PALETTE: [&str; 6] = [
    "#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377",
];

fn nice_step(span: f64) -> f64 {
    let raw = span / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let factor = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    };
    factor * mag
}

/// Renders records plus fitted curves; one colour per backend, in the order
/// the backends first appear in `records`.
pub fn scaling_svg(
    records: &[ScalingRecord],
    fits: &[(String, QuadraticFit)],
    meta: &RunMeta,
) -> String {
    let mut backends: Vec<&str> = Vec::new();
    for r in records {
        if !backends.contains(&r.backend.as_str()) {
            backends.push(&r.backend);
        }
    }
    let n_min = records.iter().map(|r| r.n).min().unwrap_or(1) as f64;
    let n_max = records.iter().map(|r| r.n).max().unwrap_or(2) as f64;
    let y_max = records
        .iter()
        .map(|r| r.mean + r.sem)
        .fold(1.0f64, f64::max)
        * 1.06;

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let x = |n: f64| MARGIN_LEFT + (n - n_min) / (n_max - n_min).max(1e-9) * plot_w;
    let y = |v: f64| MARGIN_TOP + (1.0 - v / y_max) * plot_h;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(
        out,
        "<!-- qae scale v{TOOL_VERSION} seed={} trials={} p={} -->",
        meta.seed, meta.trials, meta.p
    );
    let _ = writeln!(
        out,
        "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    );

    // Axes and grid.
    let x0 = MARGIN_LEFT;
    let y0 = MARGIN_TOP + plot_h;
    let _ = writeln!(
        out,
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{:.2}\" y2=\"{y0}\" stroke=\"black\"/>",
        MARGIN_LEFT + plot_w
    );
    let _ = writeln!(
        out,
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{MARGIN_TOP}\" stroke=\"black\"/>"
    );
    let mut n_tick = n_min;
    while n_tick <= n_max + 1e-9 {
        let px = x(n_tick);
        let _ = writeln!(
            out,
            "<line x1=\"{px:.2}\" y1=\"{y0}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"black\"/>",
            y0 + 5.0
        );
        let _ = writeln!(
            out,
            "<text x=\"{px:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
            y0 + 20.0,
            n_tick as usize
        );
        n_tick += if n_max - n_min > 12.0 { 2.0 } else { 1.0 };
    }
    let step = nice_step(y_max);
    let mut v = 0.0;
    while v <= y_max {
        let py = y(v);
        let _ = writeln!(
            out,
            "<line x1=\"{x0}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" stroke=\"#dddddd\"/>",
            MARGIN_LEFT + plot_w
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{}</text>",
            x0 - 8.0,
            py + 4.0,
            v as u64
        );
        v += step;
    }
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\">evaluation qubits</text>",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 14.0
    );
    let _ = writeln!(
        out,
        "<text x=\"18\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">two-qubit gates</text>",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    );

    for (b_idx, backend) in backends.iter().enumerate() {
        let color = PALETTE[b_idx % PALETTE.len()];

        if let Some((_, fit)) = fits.iter().find(|(name, _)| name == backend) {
            let mut path = String::new();
            let samples = 64;
            for s in 0..=samples {
                let n = n_min + (n_max - n_min) * s as f64 / samples as f64;
                let v = fit.eval(n).max(0.0).min(y_max);
                let _ = write!(
                    path,
                    "{}{:.2},{:.2}",
                    if s == 0 { "" } else { " " },
                    x(n),
                    y(v)
                );
            }
            let _ = writeln!(
                out,
                "<polyline points=\"{path}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.4\" stroke-dasharray=\"5,3\"/>"
            );
        }

        for r in records.iter().filter(|r| &r.backend == backend) {
            let px = x(r.n as f64);
            let py = y(r.mean);
            if r.sem > 0.0 {
                let (lo, hi) = (y(r.mean - r.sem), y(r.mean + r.sem));
                let _ = writeln!(
                    out,
                    "<line x1=\"{px:.2}\" y1=\"{lo:.2}\" x2=\"{px:.2}\" y2=\"{hi:.2}\" stroke=\"{color}\"/>"
                );
                for bar in [lo, hi] {
                    let _ = writeln!(
                        out,
                        "<line x1=\"{:.2}\" y1=\"{bar:.2}\" x2=\"{:.2}\" y2=\"{bar:.2}\" stroke=\"{color}\"/>",
                        px - 3.0,
                        px + 3.0
                    );
                }
            }
            let _ = writeln!(
                out,
                "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"3\" fill=\"{color}\"/>"
            );
        }

        // Legend entry.
        let ly = MARGIN_TOP + 16.0 + b_idx as f64 * 22.0;
        let lx = MARGIN_LEFT + plot_w + 16.0;
        let _ = writeln!(
            out,
            "<line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>",
            lx + 24.0
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\">{backend}</text>",
            lx + 30.0,
            ly + 4.0
        );
    }

    out.push_str("</svg>\n");
    out
}
