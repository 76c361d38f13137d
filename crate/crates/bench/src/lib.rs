//! Fixtures shared by the `signs` benchmark.

use rootsign::classify::{resolve_class, resolve_element, ResolvedClass};
use rootsign::{Label, Permutation, Result};

/// A class together with one normalizing element.
pub struct Workload {
    pub name: &'static str,
    pub class: ResolvedClass,
    pub v: Permutation,
}

pub fn workload(name: &'static str, label: Label, class: &str, num: &str) -> Result<Workload> {
    let class = resolve_class(label, class)?;
    let v = resolve_element(num, &class)?;
    Ok(Workload { name, class, v })
}

pub fn workloads() -> Result<Vec<Workload>> {
    Ok(vec![
        workload("A8 cox", Label::A(8), "cox", "norm:2")?,
        workload("B6 (3,2,1)", Label::B(6), "3+2+1", "norm:-1")?,
        workload("F4 B4", Label::F4, "B4", "norm3")?,
        workload("E8 D8(a3)", Label::E(8), "D8a3", "norm:4+4:-3")?,
    ])
}
