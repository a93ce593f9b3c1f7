//! Static SVG of a certificate's zeros in the disk.

use std::fmt::Write as _;

use ttoequiv::diskgeom::{rho, DiskPoint};

use crate::doc::{complex, CertificateDocument};

const CENTER: f64 = 210.0;
const RADIUS: f64 = 180.0;

pub fn render(cert: &CertificateDocument) -> String {
    let zeros: Vec<_> = cert.zeros.iter().map(|&p| complex(p)).collect();
    let rows = zeros.len() * zeros.len().saturating_sub(1) / 2;
    let width = 720;
    let height = (420 + rows.saturating_sub(18) * 18).max(420);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<circle cx="{CENTER}" cy="{CENTER}" r="{RADIUS}" fill="none" stroke="black" stroke-width="1.5"/>"#
    );
    let _ = writeln!(
        s,
        r##"<path d="M {} {CENTER} H {} M {CENTER} {} V {}" stroke="#bbbbbb" stroke-width="0.75"/>"##,
        CENTER - RADIUS,
        CENTER + RADIUS,
        CENTER - RADIUS,
        CENTER + RADIUS
    );
    let _ = writeln!(
        s,
        r##"<g stroke="#444444" stroke-width="1"><line x1="{a}" y1="{CENTER}" x2="{b}" y2="{CENTER}"/><line x1="{CENTER}" y1="{a}" x2="{CENTER}" y2="{b}"/></g>"##,
        a = CENTER - 5.0,
        b = CENTER + 5.0
    );
    for (k, z) in zeros.iter().enumerate() {
        let x = CENTER + RADIUS * z.re;
        let y = CENTER - RADIUS * z.im;
        let _ = writeln!(s, r##"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="#c0392b"/>"##);
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-family="monospace" font-size="12">z{}</text>"#,
            x + 6.0,
            y - 6.0,
            k + 1
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="420" y="30" font-family="monospace" font-size="13" font-weight="bold">verdict {}</text>"#,
        escape(&cert.verdict)
    );
    let _ = writeln!(s, r#"<text x="420" y="54" font-family="monospace" font-size="12">pair   rho(zi, zj)</text>"#);
    let points: Vec<Option<DiskPoint<f64>>> = zeros.iter().map(|&z| DiskPoint::new(z).ok()).collect();
    let mut line = 0;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = match (points[i], points[j]) {
                (Some(a), Some(b)) => format!("{:.6}", rho(a, b)),
                _ => "n/a".into(),
            };
            let _ = writeln!(
                s,
                r#"<text x="420" y="{}" font-family="monospace" font-size="12">({}, {})  {d}</text>"#,
                72 + 18 * line,
                i + 1,
                j + 1
            );
            line += 1;
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
