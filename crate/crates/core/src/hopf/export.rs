//! JSON form of commutator tables.

use serde::{Deserialize, Serialize};

use super::coeff::fmt_coeff;
use super::duality::CommutatorTable;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultTerm {
    pub coeff_re_num: String,
    pub coeff_re_den: String,
    pub coeff_im_num: String,
    pub coeff_im_den: String,
    /// `0` or `−1`.
    pub kappa_power: i32,
    pub monomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub lhs: String,
    pub rhs: String,
    pub result_terms: Vec<ResultTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub model: String,
    pub basis_map: String,
    pub pairing_constants: Vec<Vec<String>>,
    pub table: Vec<TableRow>,
}

/// Rationals are written as decimal strings so big numerators survive.
pub fn table_json(t: &CommutatorTable) -> TableJson {
    let table = t
        .entries
        .iter()
        .map(|e| TableRow {
            lhs: e.lhs.clone(),
            rhs: e.rhs.clone(),
            result_terms: e
                .value
                .terms()
                .map(|(m, c)| ResultTerm {
                    coeff_re_num: c.re.numer().to_string(),
                    coeff_re_den: c.re.denom().to_string(),
                    coeff_im_num: c.im.numer().to_string(),
                    coeff_im_den: c.im.denom().to_string(),
                    kappa_power: -(m.kappa as i32),
                    monomial: m.fmt_with(&e.value_names),
                })
                .collect(),
        })
        .collect();
    TableJson {
        model: t.model.to_string(),
        basis_map: t.basis_map.clone(),
        pairing_constants: t.pairing.c.iter().map(|row| row.iter().map(fmt_coeff).collect()).collect(),
        table,
    }
}
