use std::fmt::Write;

use super::{unit, Layout, Point, RenderOptions};
use crate::track::{JunctionStyle, Node};

fn num(x: f64) -> String {
    let s = format!("{:.3}", x);
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn pt(p: Point) -> String {
    format!("{} {}", num(p.0), num(p.1))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn bezier(p: &[Point; 4], t: f64) -> (Point, Point) {
    let u = 1.0 - t;
    let at = |i: usize| p[i];
    let x = u * u * u * at(0).0 + 3.0 * u * u * t * at(1).0 + 3.0 * u * t * t * at(2).0 + t * t * t * at(3).0;
    let y = u * u * u * at(0).1 + 3.0 * u * u * t * at(1).1 + 3.0 * u * t * t * at(2).1 + t * t * t * at(3).1;
    let dx = 3.0 * u * u * (at(1).0 - at(0).0) + 6.0 * u * t * (at(2).0 - at(1).0) + 3.0 * t * t * (at(3).0 - at(2).0);
    let dy = 3.0 * u * u * (at(1).1 - at(0).1) + 6.0 * u * t * (at(2).1 - at(1).1) + 3.0 * t * t * (at(3).1 - at(2).1);
    ((x, y), unit((dx, dy)))
}

/// SVG 1.1 document for a layout. Output depends only on the inputs.
pub fn emit_svg(l: &Layout, o: &RenderOptions) -> String {
    let mut s = String::new();
    let (w, h) = (num(l.width), num(l.height));
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    writeln!(s, "  <metadata>layout={}</metadata>", l.method.name()).unwrap();
    writeln!(s, r#"  <g class="tracks" fill="none" stroke="black" stroke-width="{}">"#, num(o.stroke_width)).unwrap();
    for c in &l.curves {
        let [a, b, d, e] = c.points;
        writeln!(s, r#"    <path id="seg-{}" d="M {} C {} {} {}"/>"#, c.id, pt(a), pt(b), pt(d), pt(e)).unwrap();
    }
    writeln!(s, "  </g>").unwrap();
    if o.arrowheads && l.curves.iter().any(|c| c.directed) {
        writeln!(s, r#"  <g class="arrows" fill="black" stroke="none">"#).unwrap();
        let size = 3.0 * o.stroke_width + 3.0;
        for c in l.curves.iter().filter(|c| c.directed) {
            let (p, d) = bezier(&c.points, 0.6);
            let n = (-d.1, d.0);
            let tip = (p.0 + d.0 * size, p.1 + d.1 * size);
            let l1 = (p.0 - d.0 * size + n.0 * size * 0.6, p.1 - d.1 * size + n.1 * size * 0.6);
            let l2 = (p.0 - d.0 * size - n.0 * size * 0.6, p.1 - d.1 * size - n.1 * size * 0.6);
            writeln!(s, r#"    <polygon points="{} {} {}"/>"#, pt(tip), pt(l1), pt(l2)).unwrap();
        }
        writeln!(s, "  </g>").unwrap();
    }
    writeln!(s, r#"  <g class="junctions" fill="white" stroke="black" stroke-width="{}">"#, num(o.stroke_width))
        .unwrap();
    let r = o.junction_radius;
    for (i, g) in l.nodes.iter().enumerate() {
        let Node::Junction(style) = g.node else {
            continue;
        };
        let c = g.pos;
        match style {
            JunctionStyle::Circle => {
                writeln!(
                    s,
                    r#"    <circle class="junction clique" id="node-{i}" cx="{}" cy="{}" r="{}"/>"#,
                    num(c.0),
                    num(c.1),
                    num(r)
                )
                .unwrap();
            }
            _ => {
                let (ax, ay) = g.axis;
                let (px, py) = (-ay, ax);
                let wedge = |sign: f64| {
                    let base = (c.0 - sign * ax * r, c.1 - sign * ay * r);
                    format!(
                        "M {} L {} L {} Z",
                        pt((base.0 + px * r * 0.6, base.1 + py * r * 0.6)),
                        pt(c),
                        pt((base.0 - px * r * 0.6, base.1 - py * r * 0.6))
                    )
                };
                let class = match style {
                    JunctionStyle::Biclique => "biclique",
                    JunctionStyle::Directed => "directed",
                    _ => "switch",
                };
                writeln!(s, r#"    <path class="junction {class}" id="node-{i}" d="{} {}"/>"#, wedge(1.0), wedge(-1.0))
                    .unwrap();
            }
        }
    }
    writeln!(s, "  </g>").unwrap();
    writeln!(s, r#"  <g class="terminals" fill="white" stroke="black" stroke-width="{}">"#, num(o.stroke_width))
        .unwrap();
    let tr = o.terminal_radius;
    for (i, g) in l.nodes.iter().enumerate() {
        if let Node::Terminal(_) = g.node {
            writeln!(
                s,
                r#"    <ellipse id="node-{i}" cx="{}" cy="{}" rx="{}" ry="{}"/>"#,
                num(g.pos.0),
                num(g.pos.1),
                num(tr),
                num(tr)
            )
            .unwrap();
        }
    }
    writeln!(s, "  </g>").unwrap();
    if o.labels {
        writeln!(s, r#"  <g class="labels" font-family="sans-serif" font-size="{}" text-anchor="middle">"#, num(tr))
            .unwrap();
        for g in &l.nodes {
            if let Some(label) = &g.label {
                writeln!(
                    s,
                    r#"    <text x="{}" y="{}">{}</text>"#,
                    num(g.pos.0),
                    num(g.pos.1 + tr * 0.35),
                    escape(label)
                )
                .unwrap();
            }
        }
        writeln!(s, "  </g>").unwrap();
    }
    writeln!(s, "</svg>").unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Family, Graph};
    use crate::planarity::embed;
    use crate::reduction::reduce;
    use crate::render::layout;
    use crate::track::from_reduction;

    fn render(g: &Graph) -> String {
        let t = from_reduction(&reduce(g).unwrap()).unwrap();
        let o = RenderOptions::default();
        emit_svg(&layout(&t, &embed(&t.underlying()).unwrap(), &o).unwrap(), &o)
    }

    #[test]
    fn k5_has_one_circle_and_five_spokes() {
        let svg = render(&Family::Complete(5).generate().unwrap());
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches("<path id=\"seg-").count(), 5);
        assert_eq!(svg.matches("<ellipse").count(), 5);
    }

    #[test]
    fn empty_graph() {
        let svg = render(&Graph::undirected(0));
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("<g class=\"tracks\""));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn deterministic() {
        let g = Family::CompleteBipartite(3, 3).generate().unwrap();
        assert_eq!(render(&g), render(&g));
    }

    #[test]
    fn directed_arrows() {
        let arcs: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        let d = Graph::from_edges(6, true, &arcs).unwrap();
        let svg = render(&d);
        assert_eq!(svg.matches("<polygon").count(), 6);
        assert!(svg.contains("junction directed"));
    }

    #[test]
    fn labels_are_escaped() {
        assert_eq!(escape("a<b&\"c\""), "a&lt;b&amp;&quot;c&quot;");
    }
}
