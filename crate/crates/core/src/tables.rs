//! Kernel tables for types A, F4, E8, E7, E6 and G2.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{sgn_plus, Sign};
use crate::classify::{exceptional_representative, resolve_class, Registry, Role};
use crate::error::{Error, Result};
use crate::rootsys::{Label, RootSystem};
use crate::rtheta::Provenance;
use crate::signchar::{kernel_table, minus_closed_form, sign_minus_case, SignContext};

/// Which tables to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFilter {
    /// `A_{n-1}`, keyed by the number of coordinates `n`.
    A(usize),
    Exceptional(Label),
    All,
}

/// Coordinate counts covered by `all`.
pub const ALL_A_RANGE: std::ops::RangeInclusive<usize> = 2..=9;

impl FromStr for TableFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<TableFilter> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("all") {
            return Ok(TableFilter::All);
        }
        let label: Label = t.parse()?;
        match label {
            Label::A(r) => Ok(TableFilter::A(r + 1)),
            Label::F4 | Label::G2 | Label::E(_) => Ok(TableFilter::Exceptional(label)),
            _ => Err(Error::parse("table filter", s, "expected A:<n>, F4, E6, E7, E8, G2 or all")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub name: String,
    pub descriptor: String,
    pub role: Role,
    pub computed: Sign,
    /// The tabulated value, when one is given.
    pub stated: Option<Sign>,
    /// The value of the applicable closed formula.
    pub closed: Option<Sign>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub class: String,
    pub entries: Vec<TableEntry>,
    pub kernel: String,
    pub stated_kernel: Option<String>,
    pub r_w: Provenance,
}

impl TableRow {
    pub fn agrees_with_stated(&self) -> bool {
        self.entries.iter().all(|e| e.stated.is_none_or(|p| p == e.computed))
            && self.stated_kernel.as_ref().is_none_or(|k| *k == self.kernel)
    }

    pub fn closed_forms_hold(&self) -> bool {
        self.entries.iter().all(|e| e.closed.is_none_or(|c| c == e.computed))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub system: String,
    pub title: String,
    pub rows: Vec<TableRow>,
}

fn a_title(n: usize) -> String {
    format!("A{} (n = {n})", n - 1)
}

fn a_coxeter_kernel(n: usize, minus_one: Sign) -> String {
    if minus_one.is_plus() {
        format!("C_A(w) ⋊ {{norm_q : sgn+_{n}(q) = 1}}")
    } else {
        format!("C_W(w) ⋊ {{±norm_q : sgn+_{n}(q) = ±1}}")
    }
}

fn a_table(n: usize) -> Result<Table> {
    if n < 2 {
        return Err(Error::UnsupportedLabel(format!("A:{n}")));
    }
    let label = Label::A(n - 1);
    let mut rows = Vec::new();
    let cox = resolve_class(label, "cox")?;
    let ctx = SignContext::new(&cox.sys, &cox.w)?;
    let mut entries = Vec::new();
    let stated_minus = if n.is_multiple_of(4) || n % 4 == 3 { Sign::Plus } else { Sign::Minus };
    for g in crate::classify::centralizer_and_normalizer_gens(&cox)? {
        let computed = ctx.sign(&g.element)?.sign;
        let (stated, closed) = match g.descriptor.strip_prefix("norm:") {
            Some(q) => {
                let q: i64 = q.parse().map_err(|_| Error::parse("element", &g.descriptor, "bad q"))?;
                let s = sgn_plus(n as i64, q)?;
                (Some(s), Some(s))
            }
            None if g.name == "-1" && n > 2 => (Some(stated_minus), None),
            None => (Some(Sign::Plus), None),
        };
        entries.push(TableEntry {
            name: g.name,
            descriptor: g.descriptor,
            role: g.role,
            computed,
            stated,
            closed,
        });
    }
    let minus_one = entries.iter().find(|e| e.name == "-1").map_or(Sign::Plus, |e| e.computed);
    rows.push(TableRow {
        class: "Coxeter".into(),
        kernel: a_coxeter_kernel(n, minus_one),
        stated_kernel: (n > 2).then(|| a_coxeter_kernel(n, stated_minus)),
        entries,
        r_w: ctx.r_w().provenance,
    });
    if n >= 3 {
        rows.push(minus_one_row(&cox.sys, label, &a_minus_kernel_stated(n, label))?);
    }
    Ok(Table {
        system: label.to_string(),
        title: a_title(n),
        rows,
    })
}

fn a_minus_kernel_stated(n: usize, label: Label) -> String {
    if n.is_multiple_of(2) {
        "A".into()
    } else {
        format!("ker sgn_{label} x <-1>")
    }
}

/// The row of `-1`, with the minus-case closed form beside each value.
fn minus_one_row(sys: &RootSystem, label: Label, stated_kernel: &str) -> Result<TableRow> {
    let minus = sys.negation_perm();
    let ctx = SignContext::new(sys, &minus)?;
    let mut entries = Vec::new();
    for i in 0..sys.rank() {
        let v = sys.simple_reflection_perm(i);
        entries.push(TableEntry {
            name: format!("s{i}"),
            descriptor: format!("s{i}"),
            role: Role::Centralizer,
            computed: ctx.sign(v)?.sign,
            stated: None,
            closed: Some(minus_closed_form(v, sys)?),
        });
    }
    if !sys.is_weyl(&minus) {
        entries.push(TableEntry {
            name: "-1".into(),
            descriptor: "-1".into(),
            role: Role::Centralizer,
            computed: ctx.sign(&minus)?.sign,
            stated: None,
            closed: Some(minus_closed_form(&minus, sys)?),
        });
    }
    let all_plus = entries.iter().all(|e| e.computed.is_plus());
    let reflections_minus = entries.iter().filter(|e| e.name.starts_with('s')).all(|e| !e.computed.is_plus());
    let kernel = if all_plus {
        "A".to_string()
    } else if reflections_minus && sys.is_weyl(&minus) {
        format!("ker sgn_{label}")
    } else if reflections_minus {
        format!("ker sgn_{label} x <-1>")
    } else {
        let plus: Vec<String> = entries.iter().filter(|e| e.computed.is_plus()).map(|e| e.name.clone()).collect();
        format!("<{}>", plus.join(", "))
    };
    Ok(TableRow {
        class: "-1".into(),
        entries,
        kernel,
        stated_kernel: Some(stated_kernel.to_string()),
        r_w: ctx.r_w().provenance,
    })
}

fn g2_table() -> Result<Table> {
    let sys = RootSystem::build(Label::G2)?;
    let entry = Registry::builtin().find(Label::G2, "-1")?;
    let mut row = minus_one_row(&sys, Label::G2, &entry.kernel)?;
    for e in &mut row.entries {
        let spec = entry.generator(&e.name);
        e.stated = spec.map(|g| g.expected);
        let c = sign_minus_case(sys.simple_reflection_perm(e.name[1..].parse().unwrap_or(0)), &sys)?;
        if !c.agrees() {
            return Err(Error::Verification(format!("G2 {}: closed form and brute force disagree", e.name)));
        }
    }
    Ok(Table {
        system: "G2".into(),
        title: "G2".into(),
        rows: vec![row],
    })
}

fn exceptional_table(label: Label) -> Result<Table> {
    if label == Label::G2 {
        return g2_table();
    }
    let mut rows = Vec::new();
    for entry in Registry::builtin().for_ambient(label) {
        let rep = exceptional_representative(&entry.name, label)?;
        let t = kernel_table(&rep)?;
        let minus = entry.name == "-1";
        let entries = t
            .generators
            .iter()
            .map(|g| {
                let v = crate::classify::resolve_element(
                    &g.descriptor,
                    &crate::classify::ResolvedClass {
                        sys: rep.sys.clone(),
                        w: rep.w.clone(),
                        signed: Some(rep.signed.clone()),
                        entry: Some(rep.entry),
                    },
                )?;
                Ok(TableEntry {
                    name: g.name.clone(),
                    descriptor: g.descriptor.clone(),
                    role: g.role,
                    computed: g.computed,
                    stated: Some(g.expected),
                    closed: if minus { Some(minus_closed_form(&v, &rep.sys)?) } else { None },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(TableRow {
            class: entry.name.clone(),
            entries,
            kernel: t.kernel,
            stated_kernel: Some(t.registry_kernel),
            r_w: t.provenance,
        });
    }
    Ok(Table {
        system: label.to_string(),
        title: label.to_string(),
        rows,
    })
}

/// The tables selected by `filter`, in the order A, F4, E8, E7, E6, G2.
pub fn tables(filter: TableFilter) -> Result<Vec<Table>> {
    match filter {
        TableFilter::A(n) => Ok(vec![a_table(n)?]),
        TableFilter::Exceptional(l) => Ok(vec![exceptional_table(l)?]),
        TableFilter::All => {
            let mut out: Vec<Table> = ALL_A_RANGE.map(a_table).collect::<Result<_>>()?;
            for l in [Label::F4, Label::E(8), Label::E(7), Label::E(6), Label::G2] {
                out.push(exceptional_table(l)?);
            }
            Ok(out)
        }
    }
}

fn opt(s: Option<Sign>) -> String {
    s.map_or_else(|| ".".to_string(), |s| s.to_string())
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.title)?;
        for row in &self.rows {
            writeln!(f, "class {}  (R_w {})", row.class, row.r_w)?;
            let width = row.entries.iter().map(|e| e.name.chars().count()).max().unwrap_or(0).max(9);
            writeln!(f, "  {:<width$}  {:>8}  {:>6}  {:>6}", "generator", "computed", "stated", "closed")?;
            for e in &row.entries {
                writeln!(
                    f,
                    "  {:<width$}  {:>8}  {:>6}  {:>6}",
                    e.name,
                    e.computed.to_string(),
                    opt(e.stated),
                    opt(e.closed)
                )?;
            }
            writeln!(f, "  kernel: {}", row.kernel)?;
            if let Some(k) = row.stated_kernel.as_ref().filter(|k| **k != row.kernel) {
                writeln!(f, "  stated: {k}")?;
            }
        }
        Ok(())
    }
}

/// Plain-text rendering of several tables separated by blank lines.
pub fn render_text(tables: &[Table]) -> String {
    let mut out = String::new();
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = write!(out, "{t}");
    }
    out
}

/// One CSV line per generator.
pub fn render_csv(tables: &[Table]) -> String {
    let mut out = String::from("system,class,generator,descriptor,role,computed,stated,closed,kernel,stated_kernel,r_w\n");
    let quote = |s: &str| {
        if s.contains([',', '"']) {
            format!("\"{}\"", s.replace('"', "\"\""))
        } else {
            s.to_string()
        }
    };
    for t in tables {
        for r in &t.rows {
            for e in &r.entries {
                let role = match e.role {
                    Role::Centralizer => "centralizer",
                    Role::Normalizer => "normalizer",
                };
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    quote(&t.system),
                    quote(&r.class),
                    quote(&e.name),
                    quote(&e.descriptor),
                    role,
                    e.computed,
                    opt(e.stated),
                    opt(e.closed),
                    quote(&r.kernel),
                    quote(r.stated_kernel.as_deref().unwrap_or("")),
                    r.r_w
                );
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filters() {
        assert_eq!("A:5".parse::<TableFilter>().unwrap(), TableFilter::A(5));
        assert_eq!("all".parse::<TableFilter>().unwrap(), TableFilter::All);
        assert!("B4".parse::<TableFilter>().is_err());
    }

    #[test]
    fn a5_rows() {
        let t = &tables(TableFilter::A(5)).unwrap()[0];
        assert_eq!(t.rows.len(), 2);
        let cox = &t.rows[0];
        assert!(cox.closed_forms_hold());
        let norm2 = cox.entries.iter().find(|e| e.name == "norm2").unwrap();
        assert_eq!(norm2.computed, Sign::Minus);
        assert_eq!(cox.kernel, "C_A(w) ⋊ {norm_q : sgn+_5(q) = 1}");
    }

    #[test]
    fn e6_rows() {
        let t = &tables(TableFilter::Exceptional(Label::E(6))).unwrap()[0];
        let kernels: Vec<&str> = t.rows.iter().map(|r| r.kernel.as_str()).collect();
        assert_eq!(kernels, ["A", "C_A(w)"]);
        assert!(t.rows.iter().all(TableRow::agrees_with_stated));
    }

    #[test]
    fn f4_rows() {
        let t = &tables(TableFilter::Exceptional(Label::F4)).unwrap()[0];
        assert_eq!(t.rows.len(), 4);
        let agree: Vec<bool> = t.rows.iter().map(TableRow::agrees_with_stated).collect();
        assert_eq!(agree, [true, false, true, false]);
    }
}
