use super::expr::{QExpr, QRationalMap};
use super::qlaurent::QLaurent;
use super::torus::{qmul, QTorusElem};
use crate::cluster::Seed;
use crate::surface::{epsilon_of_triangulation, Flip, Triangulation};
use crate::{Error, Result};
use std::collections::HashMap;

/// Builds `Σ q^k·(product of generators)` from `(k, labels)` terms, products taken in
/// the printed order.
struct Roles<'a> {
    seed: &'a Seed,
    names: HashMap<&'static str, String>,
}

impl Roles<'_> {
    fn gen(&self, label: &str) -> Result<QTorusElem> {
        let name = self.names.get(label).ok_or_else(|| Error::UnknownVariable(label.into()))?;
        QTorusElem::named(self.seed, name)
    }

    fn word(&self, labels: &[&str]) -> Result<QTorusElem> {
        labels.iter().try_fold(QTorusElem::one(self.seed), |acc, l| qmul(self.seed, &acc, &self.gen(l)?))
    }

    fn sum(&self, terms: &[(i32, &[&str])]) -> Result<QExpr> {
        let mut acc = QTorusElem::zero(self.seed);
        for (k, labels) in terms {
            acc = acc.add(&self.word(labels)?.scale(&QLaurent::q_pow(*k)));
        }
        Ok(QExpr::Elem(acc))
    }

    fn inv_gen(&self, label: &str) -> Result<QExpr> {
        Ok(QExpr::Elem(self.gen(label)?.monomial_inverse()?))
    }

    /// `1 + q·X⁻¹`.
    fn plus_inv(&self, label: &str) -> Result<QExpr> {
        let x = self.gen(label)?.monomial_inverse()?;
        Ok(QExpr::Elem(QTorusElem::one(self.seed).add(&x.scale(&QLaurent::q_pow(1)))))
    }
}

/// The quantum flip formulas for the labels `A..H, X, Y, Z, W`, keyed by `A'..H', X'..W'`.
/// Side labels missing from `names` are skipped.
pub fn quantum_flip_formulas(seed: &Seed, names: HashMap<&'static str, String>) -> Result<Vec<(&'static str, QExpr)>> {
    let r = Roles { seed, names };
    let e = |l: &str| -> Result<QExpr> { Ok(QExpr::Elem(r.gen(l)?)) };
    let pz = r.sum(&[(0, &[]), (1, &["Z"])])?;
    let pw = r.sum(&[(0, &[]), (1, &["W"])])?;
    let pzi = r.plus_inv("Z")?;
    let pwi = r.plus_inv("W")?;
    let sz = r.sum(&[(0, &[]), (1, &["Z"]), (2, &["Z", "X"]), (3, &["Z", "X", "W"])])?;
    let sw = r.sum(&[(0, &[]), (1, &["W"]), (2, &["W", "Y"]), (3, &["W", "Y", "Z"])])?;
    let szm = r.sum(&[(0, &[]), (-1, &["Z"]), (-2, &["X", "Z"]), (-3, &["W", "X", "Z"])])?;
    let swm = r.sum(&[(0, &[]), (-1, &["W"]), (-2, &["Y", "W"]), (-3, &["Z", "Y", "W"])])?;
    let p = |v: Vec<QExpr>| QExpr::product(v);
    let mut out = Vec::new();
    let has = |l: &str| r.names.contains_key(l);
    if has("A") {
        out.push(("A'", p(vec![e("A")?, pz.clone()])));
    }
    if has("B") {
        out.push(("B'", p(vec![e("B")?, pz.clone().inv(), sz.clone()])));
    }
    if has("C") {
        out.push(("C'", p(vec![e("C")?, e("Z")?, e("X")?, pw.clone(), szm.clone().inv()])));
    }
    if has("D") {
        out.push(("D'", p(vec![e("D")?, pwi.clone().inv()])));
    }
    if has("E") {
        out.push(("E'", p(vec![e("E")?, pw.clone()])));
    }
    if has("F") {
        out.push(("F'", p(vec![e("F")?, pw.clone().inv(), sw.clone()])));
    }
    if has("G") {
        out.push(("G'", p(vec![e("G")?, e("W")?, e("Y")?, pz.clone(), swm.clone().inv()])));
    }
    if has("H") {
        out.push(("H'", p(vec![e("H")?, pzi.clone().inv()])));
    }
    out.push(("X'", p(vec![pw.clone().inv(), pzi, r.inv_gen("X")?])));
    out.push(("Y'", p(vec![pwi, pz.clone().inv(), r.inv_gen("Y")?])));
    out.push(("Z'", p(vec![e("X")?, pw.clone(), szm.inv(), pw.inv(), sw])));
    out.push(("W'", p(vec![r.inv_gen("W")?, pz.clone().inv(), sz, e("W")?, e("Y")?, pz, swm.inv()])));
    Ok(out)
}

/// The intermediate stage after the mutations at `Z` and `W`, keyed by `A1..Y1`.
pub fn quantum_flip_intermediate(seed: &Seed, names: HashMap<&'static str, String>) -> Result<Vec<(&'static str, QExpr)>> {
    let r = Roles { seed, names };
    let e = |l: &str| -> Result<QExpr> { Ok(QExpr::Elem(r.gen(l)?)) };
    let pz = r.sum(&[(0, &[]), (1, &["Z"])])?;
    let pw = r.sum(&[(0, &[]), (1, &["W"])])?;
    let pzi = r.plus_inv("Z")?;
    let pwi = r.plus_inv("W")?;
    let p = |v: Vec<QExpr>| QExpr::product(v);
    let has = |l: &str| r.names.contains_key(l);
    let mut out = Vec::new();
    for l in ["B", "C", "F", "G"] {
        if has(l) {
            out.push((stage_label(l), e(l)?));
        }
    }
    out.push(("Z1", r.inv_gen("Z")?));
    out.push(("W1", r.inv_gen("W")?));
    if has("A") {
        out.push(("A1", p(vec![e("A")?, pz.clone()])));
    }
    if has("D") {
        out.push(("D1", p(vec![e("D")?, pwi.clone().inv()])));
    }
    if has("H") {
        out.push(("H1", p(vec![e("H")?, pzi.clone().inv()])));
    }
    if has("E") {
        out.push(("E1", p(vec![e("E")?, pw.clone()])));
    }
    out.push(("X1", p(vec![e("X")?, pzi.inv(), pw])));
    out.push(("Y1", p(vec![e("Y")?, pz, pwi.inv()])));
    Ok(out)
}

fn stage_label(l: &str) -> &'static str {
    match l {
        "B" => "B1",
        "C" => "C1",
        "F" => "F1",
        _ => "G1",
    }
}

/// Role label → marked-point name for a flip, requiring distinct names.
pub fn role_names(fl: &Flip) -> Result<HashMap<&'static str, String>> {
    let names: HashMap<&'static str, String> = fl.roles.labeled().into_iter().collect();
    let mut seen: Vec<&String> = names.values().collect();
    seen.sort();
    seen.dedup();
    if seen.len() != names.len() {
        return Err(Error::SeedMismatch("quantum flip needs distinct marked points in every role".into()));
    }
    Ok(names)
}

/// The quantum flip at an edge as a map from the flipped seed, given by the printed formulas.
pub fn quantum_flip(tri: &Triangulation, edge: usize) -> Result<QRationalMap> {
    let fl = Flip::new(tri, edge)?;
    let names = role_names(&fl)?;
    let source = epsilon_of_triangulation(tri)?;
    let target = epsilon_of_triangulation(&fl.after)?;
    let formulas = quantum_flip_formulas(&source, names.clone())?;
    let n = &fl.new_roles;
    let mut images: HashMap<String, QExpr> = HashMap::new();
    for (label, expr) in formulas {
        let name = match label {
            "X'" => n.near_p2.clone(),
            "Y'" => n.near_p4.clone(),
            "Z'" => n.n1.clone(),
            "W'" => n.n2.clone(),
            _ => names[&label[..1]].clone(),
        };
        images.insert(name, expr);
    }
    let images = target
        .names()
        .iter()
        .map(|name| match images.remove(name) {
            Some(e) => Ok(e),
            None => Ok(QExpr::Elem(QTorusElem::named(&source, name)?)),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QRationalMap { source, target, images })
}
