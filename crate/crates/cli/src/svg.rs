//! Minimal static SVG line plots. No interactivity, no external assets:
//! the output is a self-contained `<svg>` element whose bytes depend only
//! on the inputs.

/// A named series to draw.
#[derive(Debug, Clone, Copy)]
pub struct SeriesSpec<'a> {
    pub name: &'a str,
    pub values: &'a [f64],
}

const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
const MARGIN_LEFT: f64 = 56.0;
const MARGIN_RIGHT: f64 = 16.0;
const MARGIN_TOP: f64 = 32.0;
const MARGIN_BOTTOM: f64 = 36.0;

/// Render one polyline per series over a shared axis frame. The y-axis
/// range is exactly the data range across all series (padded only when the
/// data are flat); x is the 0-based observation index.
pub fn line_plot(title: &str, series: &[SeriesSpec<'_>], width: u32, height: u32) -> String {
    let w = width as f64;
    let h = height as f64;
    let plot_w = (w - MARGIN_LEFT - MARGIN_RIGHT).max(1.0);
    let plot_h = (h - MARGIN_TOP - MARGIN_BOTTOM).max(1.0);

    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    let mut x_max = 0usize;
    for s in series {
        for v in s.values {
            y_min = y_min.min(*v);
            y_max = y_max.max(*v);
        }
        x_max = x_max.max(s.values.len().saturating_sub(1));
    }
    if !y_min.is_finite() || !y_max.is_finite() {
        y_min = 0.0;
        y_max = 1.0;
    }
    if y_min == y_max {
        y_min -= 1.0;
        y_max += 1.0;
    }
    let x_span = x_max.max(1) as f64;
    let to_x = |i: usize| MARGIN_LEFT + plot_w * i as f64 / x_span;
    let to_y = |v: f64| MARGIN_TOP + plot_h * (1.0 - (v - y_min) / (y_max - y_min));

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    ));
    out.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"white\"/>\n"
    ));
    out.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" \
         text-anchor=\"middle\">{}</text>\n",
        w / 2.0,
        escape_xml(title)
    ));
    // axis frame
    out.push_str(&format!(
        "  <line x1=\"{l:.2}\" y1=\"{t:.2}\" x2=\"{l:.2}\" y2=\"{b:.2}\" stroke=\"black\"/>\n",
        l = MARGIN_LEFT,
        t = MARGIN_TOP,
        b = MARGIN_TOP + plot_h
    ));
    out.push_str(&format!(
        "  <line x1=\"{l:.2}\" y1=\"{b:.2}\" x2=\"{r:.2}\" y2=\"{b:.2}\" stroke=\"black\"/>\n",
        l = MARGIN_LEFT,
        b = MARGIN_TOP + plot_h,
        r = MARGIN_LEFT + plot_w
    ));
    // y-range labels
    out.push_str(&format!(
        "  <text x=\"{x:.2}\" y=\"{y:.2}\" font-family=\"sans-serif\" font-size=\"10\" \
         text-anchor=\"end\">{v:.2}</text>\n",
        x = MARGIN_LEFT - 4.0,
        y = MARGIN_TOP + 4.0,
        v = y_max
    ));
    out.push_str(&format!(
        "  <text x=\"{x:.2}\" y=\"{y:.2}\" font-family=\"sans-serif\" font-size=\"10\" \
         text-anchor=\"end\">{v:.2}</text>\n",
        x = MARGIN_LEFT - 4.0,
        y = MARGIN_TOP + plot_h + 4.0,
        v = y_min
    ));
    // x labels: first and last observation index
    out.push_str(&format!(
        "  <text x=\"{x:.2}\" y=\"{y:.2}\" font-family=\"sans-serif\" font-size=\"10\" \
         text-anchor=\"middle\">0</text>\n",
        x = MARGIN_LEFT,
        y = MARGIN_TOP + plot_h + 16.0,
    ));
    out.push_str(&format!(
        "  <text x=\"{x:.2}\" y=\"{y:.2}\" font-family=\"sans-serif\" font-size=\"10\" \
         text-anchor=\"middle\">{v}</text>\n",
        x = MARGIN_LEFT + plot_w,
        y = MARGIN_TOP + plot_h + 16.0,
        v = x_max
    ));

    for (idx, s) in series.iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        let points: Vec<String> = s
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{:.2},{:.2}", to_x(i), to_y(*v)))
            .collect();
        out.push_str(&format!(
            "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            points.join(" ")
        ));
        // legend entry
        out.push_str(&format!(
            "  <text x=\"{x:.2}\" y=\"{y}\" font-family=\"sans-serif\" font-size=\"11\" \
             fill=\"{color}\">{name}</text>\n",
            x = MARGIN_LEFT + 8.0 + 90.0 * idx as f64,
            y = MARGIN_TOP - 6.0,
            name = escape_xml(s.name)
        ));
    }
    out.push_str("</svg>\n");
    out
}

fn escape_xml(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_one_polyline_per_series() {
        let a = [1.0, 2.0, 3.0];
        let b = [3.0, 1.0, 2.0];
        let svg = line_plot(
            "demo",
            &[
                SeriesSpec { name: "a", values: &a },
                SeriesSpec { name: "b", values: &b },
            ],
            640,
            400,
        );
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("demo"));
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn y_labels_span_the_data_range() {
        let a = [2.11, 133.94, 50.0];
        let svg = line_plot("range", &[SeriesSpec { name: "a", values: &a }], 640, 400);
        assert!(svg.contains(">133.94</text>"));
        assert!(svg.contains(">2.11</text>"));
    }

    #[test]
    fn flat_series_get_a_padded_range() {
        let a = [5.0, 5.0];
        let svg = line_plot("flat", &[SeriesSpec { name: "a", values: &a }], 640, 400);
        assert!(svg.contains(">6.00</text>"));
        assert!(svg.contains(">4.00</text>"));
    }

    #[test]
    fn output_is_deterministic() {
        let a = [1.0, 4.0, 2.0];
        let spec = [SeriesSpec { name: "a", values: &a }];
        assert_eq!(line_plot("t", &spec, 300, 200), line_plot("t", &spec, 300, 200));
    }

    #[test]
    fn titles_are_xml_escaped() {
        let a = [1.0, 2.0];
        let svg = line_plot("a < b & c", &[SeriesSpec { name: "s", values: &a }], 300, 200);
        assert!(svg.contains("a &lt; b &amp; c"));
    }
}
