//! Static SVG plot emitters: raw series, ACF/PACF, the Hurst path with
//! regime knots, the wavelet power map and the global spectrum.

use chronohurst::hurst::{ChePath, Segmentation};
use chronohurst::series::MonthlySeries;
use chronohurst::wavelet::{GlobalSpectrum, WaveletSpectrum};

const W: f64 = 900.0;
const H: f64 = 420.0;
const ML: f64 = 70.0; // margins
const MR: f64 = 20.0;
const MT: f64 = 25.0;
const MB: f64 = 45.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        ML + (v - self.x0) / (self.x1 - self.x0) * (W - ML - MR)
    }
    fn y(&self, v: f64) -> f64 {
        H - MB - (v - self.y0) / (self.y1 - self.y0) * (H - MT - MB)
    }
}

fn svg_open(title: &str) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" \
         viewBox=\"0 0 {W} {H}\" font-family=\"sans-serif\" font-size=\"11\">\n\
         <rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"16\" text-anchor=\"middle\" font-size=\"13\">{}</text>\n",
        W / 2.0,
        xml_escape(title)
    )
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn polyline(points: &[(f64, f64)], stroke: &str, width: f64) -> String {
    let pts: Vec<String> = points
        .iter()
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .map(|(x, y)| format!("{x:.2},{y:.2}"))
        .collect();
    format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width}\"/>\n",
        pts.join(" ")
    )
}

fn axes(f: &Frame, xlabel: &str, ylabel: &str) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "<line x1=\"{ML}\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"black\"/>\n",
        H - MB,
        W - MR
    ));
    s.push_str(&format!(
        "<line x1=\"{ML}\" y1=\"{MT}\" x2=\"{ML}\" y2=\"{}\" stroke=\"black\"/>\n",
        H - MB
    ));
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
        (ML + W - MR) / 2.0,
        H - 8.0,
        xml_escape(xlabel)
    ));
    s.push_str(&format!(
        "<text x=\"14\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 14 {})\">{}</text>\n",
        (MT + H - MB) / 2.0,
        (MT + H - MB) / 2.0,
        xml_escape(ylabel)
    ));
    let _ = f;
    s
}

fn year_ticks(s: &MonthlySeries, f: &Frame) -> String {
    let mut out = String::new();
    let n = s.len();
    let step_years = ((n / 12) / 8).max(1);
    let mut m = s.start;
    if m.month != 1 {
        m = chronohurst::series::MonthYear::new(m.year + 1, 1);
    }
    while let Some(i) = s.index_of(m) {
        if (m.year - s.start.year) % step_years as i32 == 0 {
            let x = f.x(i as f64);
            out.push_str(&format!(
                "<line x1=\"{x:.1}\" y1=\"{0}\" x2=\"{x:.1}\" y2=\"{1}\" stroke=\"black\"/>\n\
                 <text x=\"{x:.1}\" y=\"{2}\" text-anchor=\"middle\">{3}</text>\n",
                H - MB,
                H - MB + 4.0,
                H - MB + 16.0,
                m.year
            ));
        }
        m = chronohurst::series::MonthYear::new(m.year + 1, 1);
    }
    out
}

/// Raw series line chart.
pub fn raw_series_svg(s: &MonthlySeries) -> String {
    let ymax = s.values.iter().cloned().fold(f64::MIN, f64::max);
    let ymin = s.values.iter().cloned().fold(f64::MAX, f64::min).min(0.0);
    let f = Frame {
        x0: 0.0,
        x1: (s.len() - 1) as f64,
        y0: ymin,
        y1: ymax * 1.02 + 1e-9,
    };
    let mut out = svg_open(&format!("Monthly values: {}", s.label));
    out.push_str(&axes(&f, "year", "count / month"));
    out.push_str(&year_ticks(s, &f));
    let pts: Vec<(f64, f64)> = s
        .values
        .iter()
        .enumerate()
        .map(|(i, &v)| (f.x(i as f64), f.y(v)))
        .collect();
    out.push_str(&polyline(&pts, "#1f77b4", 1.0));
    out.push_str("</svg>\n");
    out
}

/// ACF and PACF stem panels with the +-1.96/sqrt(n) band.
pub fn correlation_svg(acf: &[f64], pacf: &[f64], band: f64) -> String {
    let mut out = svg_open("Serial and partial correlation");
    let half = (W - ML - MR - 40.0) / 2.0;
    for (panel, (name, data, lag0)) in [("ACF", acf, 0usize), ("PACF", pacf, 1usize)]
        .iter()
        .enumerate()
    {
        let x_off = ML + panel as f64 * (half + 40.0);
        let f = Frame {
            x0: 0.0,
            x1: data.len() as f64,
            y0: -1.0,
            y1: 1.0,
        };
        let px = |i: f64| x_off + i / f.x1 * half;
        let py = |v: f64| f.y(v);
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{MT}\" text-anchor=\"middle\">{name}</text>\n",
            x_off + half / 2.0
        ));
        // zero line and confidence band
        out.push_str(&format!(
            "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"{half:.1}\" height=\"{:.1}\" fill=\"#9ecae1\" fill-opacity=\"0.4\"/>\n",
            px(0.0),
            py(band),
            (py(-band) - py(band)).abs()
        ));
        out.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
            px(0.0),
            py(0.0),
            px(0.0) + half,
            py(0.0)
        ));
        for (i, &v) in data.iter().enumerate() {
            let x = px((i + lag0) as f64);
            out.push_str(&format!(
                "<line x1=\"{x:.1}\" y1=\"{:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n",
                py(0.0),
                py(v)
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// The expanding-window Hurst path with fitted regime knots.
pub fn che_svg(path: &ChePath, seg: Option<&Segmentation>) -> String {
    let mut out = svg_open("Expanding-window Hurst exponent");
    let f = Frame {
        x0: 0.0,
        x1: (path.values.len() - 1) as f64,
        y0: 0.0,
        y1: 1.5,
    };
    out.push_str(&axes(&f, "window end", "H"));
    for g in [0.5, 1.0] {
        out.push_str(&format!(
            "<line x1=\"{ML}\" y1=\"{0:.1}\" x2=\"{1}\" y2=\"{0:.1}\" stroke=\"#cccccc\" stroke-dasharray=\"4 3\"/>\n",
            f.y(g),
            W - MR
        ));
    }
    let pts: Vec<(f64, f64)> = path
        .values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_finite())
        .map(|(i, &v)| (f.x(i as f64), f.y(v.clamp(0.0, 1.5))))
        .collect();
    out.push_str(&polyline(&pts, "#1f77b4", 1.2));
    if let Some(seg) = seg {
        for (knot, label) in [(seg.knot1, "knot1"), (seg.knot2, "knot2")] {
            let i = knot.ordinal() - path.start.ordinal();
            let x = f.x(i as f64);
            out.push_str(&format!(
                "<line x1=\"{x:.1}\" y1=\"{MT}\" x2=\"{x:.1}\" y2=\"{0}\" stroke=\"#d62728\" stroke-dasharray=\"6 3\"/>\n\
                 <text x=\"{x:.1}\" y=\"{1}\" text-anchor=\"middle\" fill=\"#d62728\">{label} {knot}</text>\n",
                H - MB,
                MT + 12.0
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

fn heat_color(t: f64) -> String {
    // dark blue -> yellow ramp
    let t = t.clamp(0.0, 1.0);
    let r = (255.0 * t) as u8;
    let g = (235.0 * t.powf(0.7)) as u8;
    let b = (130.0 * (1.0 - t) + 40.0) as u8;
    format!("#{r:02x}{g:02x}{b:02x}")
}

/// Wavelet power heatmap (log period axis) with significance contours and
/// COI shading.
pub fn wavelet_svg(w: &WaveletSpectrum) -> String {
    let mut out = svg_open("Wavelet power (period vs time)");
    let jn = w.periods.len();
    let lp: Vec<f64> = w.periods.iter().map(|p| p.ln()).collect();
    let f = Frame {
        x0: 0.0,
        x1: w.n as f64,
        y0: lp[0],
        y1: *lp.last().unwrap(),
    };
    out.push_str(&axes(&f, "month index", "period (years, log)"));
    // log-power color scale over positive values
    let mut vmax = 0.0f64;
    for row in &w.power {
        for &v in row {
            vmax = vmax.max(v);
        }
    }
    let lo = (vmax * 1e-6).max(f64::MIN_POSITIVE);
    let scale = |v: f64| ((v.max(lo) / lo).ln() / (vmax / lo).ln()).clamp(0.0, 1.0);
    let cell_h = (H - MT - MB) / jn as f64;
    for j in 0..jn {
        let y = f.y(lp[j]) - cell_h / 2.0;
        // run-length encode color bins along the row
        let bin = |t: usize| (scale(w.power[j][t]) * 15.0).round() as u8;
        let mut t0 = 0usize;
        while t0 < w.n {
            let b = bin(t0);
            let mut t1 = t0 + 1;
            while t1 < w.n && bin(t1) == b {
                t1 += 1;
            }
            let x = f.x(t0 as f64);
            let wdt = f.x(t1 as f64) - x;
            out.push_str(&format!(
                "<rect x=\"{x:.1}\" y=\"{y:.1}\" width=\"{wdt:.2}\" height=\"{cell_h:.2}\" fill=\"{}\"/>\n",
                heat_color(b as f64 / 15.0)
            ));
            t0 = t1;
        }
    }
    // significance contours: horizontal runs of significant cells
    for j in 0..jn {
        let y = f.y(lp[j]);
        let row = &w.significance_mask[j];
        let mut t0 = 0usize;
        while t0 < w.n {
            if !row[t0] {
                t0 += 1;
                continue;
            }
            let mut t1 = t0;
            while t1 + 1 < w.n && row[t1 + 1] {
                t1 += 1;
            }
            out.push_str(&format!(
                "<path class=\"sig\" d=\"M {:.1} {:.1} H {:.1}\" stroke=\"white\" stroke-width=\"1.4\" fill=\"none\"/>\n",
                f.x(t0 as f64),
                y,
                f.x((t1 + 1) as f64)
            ));
            t0 = t1 + 1;
        }
    }
    // COI shading: hatch the region above the coi curve
    let mut coi_pts = vec![(f.x(0.0), f.y(f.y1.min(f.y1)))];
    coi_pts.clear();
    coi_pts.push((f.x(0.0), f.y(f.y1)));
    for t in 0..w.n {
        coi_pts.push((f.x(t as f64), f.y(w.coi[t].max(w.periods[0]).ln())));
    }
    coi_pts.push((f.x((w.n - 1) as f64), f.y(f.y1)));
    let pts: Vec<String> = coi_pts
        .iter()
        .map(|(x, y)| format!("{x:.1},{y:.1}"))
        .collect();
    out.push_str(&format!(
        "<polygon points=\"{}\" fill=\"black\" fill-opacity=\"0.25\"/>\n",
        pts.join(" ")
    ));
    out.push_str("</svg>\n");
    out
}

/// Global (time-averaged) spectrum with its significance curve.
pub fn global_spectrum_svg(gs: &GlobalSpectrum) -> String {
    let mut out = svg_open(&format!(
        "Global wavelet spectrum (significance at {:.0}%)",
        gs.alpha * 100.0
    ));
    let finite: Vec<(f64, f64, f64)> = gs
        .periods
        .iter()
        .zip(&gs.avg_power)
        .zip(&gs.significance_level)
        .filter(|((_, a), _)| a.is_finite())
        .map(|((p, a), s)| (*p, *a, *s))
        .collect();
    if finite.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    let pmax = finite
        .iter()
        .map(|(_, a, s)| a.max(if s.is_finite() { *s } else { 0.0 }))
        .fold(f64::MIN_POSITIVE, f64::max);
    let f = Frame {
        x0: finite[0].0.ln(),
        x1: finite.last().unwrap().0.ln(),
        y0: 0.0,
        y1: pmax * 1.05,
    };
    out.push_str(&axes(&f, "period (years, log)", "mean power"));
    let pow_pts: Vec<(f64, f64)> = finite
        .iter()
        .map(|(p, a, _)| (f.x(p.ln()), f.y(*a)))
        .collect();
    let sig_pts: Vec<(f64, f64)> = finite
        .iter()
        .filter(|(_, _, s)| s.is_finite())
        .map(|(p, _, s)| (f.x(p.ln()), f.y(s.min(f.y1))))
        .collect();
    out.push_str(&polyline(&pow_pts, "#1f77b4", 1.5));
    out.push_str(&polyline(&sig_pts, "#d62728", 1.2));
    for (p, label) in [(4.0f64, "4y"), (8.0, "8y"), (17.0, "17y")] {
        if p.ln() >= f.x0 && p.ln() <= f.x1 {
            let x = f.x(p.ln());
            out.push_str(&format!(
                "<line x1=\"{x:.1}\" y1=\"{MT}\" x2=\"{x:.1}\" y2=\"{0}\" stroke=\"#cccccc\" stroke-dasharray=\"3 3\"/>\n\
                 <text x=\"{x:.1}\" y=\"{1}\" text-anchor=\"middle\">{label}</text>\n",
                H - MB,
                H - MB + 16.0
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}
