//! Plain-text tables for `--format table`.

use curve_foundry::catalog::FamilyRecord;
use curve_foundry::instantiate::CurveInstance;
use curve_foundry::security::SecurityReport;
use curve_foundry::toyverify::MovReport;

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render(&self) -> String {
        let n = self.header.len();
        let mut width: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (i, c) in r.iter().enumerate().take(n) {
                width[i] = width[i].max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, c) in cells.iter().enumerate().take(n) {
                if i + 1 == n {
                    s.push_str(c);
                } else {
                    s.push_str(&format!("{c:<w$}  ", w = width[i]));
                }
            }
            s.trim_end().to_string() + "\n"
        };
        let mut out = line(&self.header);
        out.push_str(&line(&width.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>()));
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }
}

pub fn family(f: &FamilyRecord) -> String {
    let mut s = format!("{} (k = {}, {}, D = {})\n", f.name, f.k, f.taxonomy, f.d);
    s.push_str(&format!("  q(u) = {}\n", f.q.display_with("u")));
    s.push_str(&format!("  r(u) = {}\n", f.r.display_with("u")));
    s.push_str(&format!("  t(u) = {}\n", f.t.display_with("u")));
    s.push_str(&format!("  h(u) = {}\n", f.h.display_with("u")));
    s.push_str(&format!("  r cofactor = {}, rho = {}\n", f.r_cofactor, f.rho));
    s.push_str(&format!("  provenance: {}\n", f.provenance));
    if !f.flags.is_empty() {
        s.push_str(&format!("  flags: {}\n", f.flags.join(", ")));
    }
    if !f.note.is_empty() {
        s.push_str(&format!("  note: {}\n", f.note));
    }
    for e in &f.validation.entries {
        s.push_str(&format!("  {:<6} {:<7} {}\n", e.id, e.status, e.detail));
    }
    s
}

pub fn instances(list: &[CurveInstance]) -> String {
    let mut t = Table::new(&["family", "seed", "k", "q bits", "r bits", "rho", "D", "checks"]);
    for i in list {
        let seed = match (&i.seed_sparse, &i.seed) {
            (Some(terms), _) => curve_foundry::instantiate::format_sparse(terms),
            (None, Some(u)) => u.to_string(),
            _ => "-".into(),
        };
        let checks = if i.report.all_pass() {
            "pass".to_string()
        } else if i.report.no_failures() {
            "pass (some unknown)".to_string()
        } else {
            "FAIL".to_string()
        };
        t.row(vec![
            i.family.clone(),
            seed,
            i.k.to_string(),
            i.q_bits().to_string(),
            i.r_bits().to_string(),
            format!("{:.3}", num_traits::ToPrimitive::to_f64(&i.rho_bits).unwrap_or(f64::NAN)),
            i.d.to_string(),
            checks,
        ]);
    }
    let mut s = t.render();
    if list.len() == 1 {
        let i = &list[0];
        s.push_str(&format!("q = {}\nr = {}\nt = {}\ny = {}\n", i.q, i.r_prime, i.t, i.y));
    }
    s
}

pub fn security(r: &SecurityReport) -> String {
    let mut t = Table::new(&["attack", "c", "N bits", "bits"]);
    for e in &r.entries {
        t.row(vec![e.name.clone(), e.c.to_string(), e.n_bits.to_string(), format!("{:.1}", e.bits)]);
    }
    t.row(vec!["Pollard-rho".into(), "-".into(), format!("r: {}", r.r_bits), format!("{:.1}", r.rho_bits)]);
    let mut s = format!("q bits {}, k {}, characteristic {}\n", r.q_bits, r.k, r.class);
    s.push_str(&t.render());
    s.push_str(&format!("overall {:.1} bits (limited by {})\n", r.overall, r.limiting));
    if let Some(p) = &r.published_reference {
        s.push_str(&format!("published reference: {p}\n"));
    }
    s
}

pub fn mov(r: &MovReport) -> String {
    let c = &r.curve;
    let mut s = format!(
        "E: y^2 = x^3 + {}x + {} over F_{} with {} points, r = {}, k = {}\n",
        c.a, c.b, c.q, c.n, r.r, r.k
    );
    s.push_str(&format!("Q sampled at counter {}, e(P, Q) = {:?}\n", r.q_counter, r.pairing));
    let mut t = Table::new(&["x", "rho on E", "BSGS in F_q^k", "agree"]);
    for ch in &r.challenges {
        let ok = ch.direct == ch.x && ch.transferred == ch.x;
        t.row(vec![ch.x.to_string(), ch.direct.to_string(), ch.transferred.to_string(), if ok { "yes" } else { "NO" }.into()]);
    }
    s.push_str(&t.render());
    s.push_str(if r.all_agree { "both paths agree on every challenge\n" } else { "paths DISAGREE\n" });
    s
}
