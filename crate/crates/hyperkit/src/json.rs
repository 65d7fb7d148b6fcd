//! JSON interchange for hypergroups, character tables and group actions.
//! Rationals travel as canonical "num/den" strings so that a parse/emit
//! cycle is bit-exact.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteHypergroup, Slice};
use crate::characters::NormalizedCharacter;
use crate::error::{HyperError, Result};
use crate::scalar::{format_rational, parse_rational};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypergroupJson {
    pub name: String,
    pub elements: Vec<String>,
    pub identity: usize,
    pub involution: Vec<usize>,
    /// table[i][j] maps element index (as a string key) to "num/den".
    pub table: Vec<Vec<BTreeMap<String, String>>>,
    /// "circle" / "bullet" per element for twisted tables; absent otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sides: Option<Vec<String>>,
}

pub fn hypergroup_to_json(h: &FiniteHypergroup, n_big: Option<usize>) -> HypergroupJson {
    let table = (0..h.order())
        .map(|i| {
            (0..h.order())
                .map(|j| {
                    h.slice(i, j)
                        .iter()
                        .map(|(&k, v)| (k.to_string(), format_rational(v)))
                        .collect()
                })
                .collect()
        })
        .collect();
    HypergroupJson {
        name: h.name().to_string(),
        elements: h.labels().to_vec(),
        identity: h.identity(),
        involution: h.involution_map().to_vec(),
        table,
        sides: n_big.map(|nb| {
            (0..h.order())
                .map(|i| if i < nb { "circle".into() } else { "bullet".into() })
                .collect()
        }),
    }
}

pub fn hypergroup_from_json(data: &HypergroupJson) -> Result<FiniteHypergroup> {
    let n = data.elements.len();
    if data.table.len() != n || data.table.iter().any(|row| row.len() != n) {
        return Err(HyperError::Malformed("table shape differs from element count".into()));
    }
    let mut table = vec![vec![Slice::new(); n]; n];
    for (i, row) in data.table.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            for (key, value) in cell {
                let k: usize = key
                    .parse()
                    .map_err(|_| HyperError::Malformed(format!("bad element key {key:?}")))?;
                if k >= n {
                    return Err(HyperError::Malformed(format!("element key {k} out of range")));
                }
                let v = parse_rational(value).map_err(HyperError::Malformed)?;
                table[i][j].insert(k, v);
            }
        }
    }
    FiniteHypergroup::new(
        data.name.clone(),
        data.elements.clone(),
        data.identity,
        data.involution.clone(),
        table,
    )
}

pub fn hypergroup_to_string(h: &FiniteHypergroup, n_big: Option<usize>) -> String {
    serde_json::to_string_pretty(&hypergroup_to_json(h, n_big)).expect("serializable")
}

pub fn hypergroup_from_str(text: &str) -> Result<FiniteHypergroup> {
    let data: HypergroupJson = serde_json::from_str(text)
        .map_err(|e| HyperError::Malformed(format!("hypergroup JSON: {e}")))?;
    hypergroup_from_json(&data)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterJson {
    /// One [re, im] pair per element.
    pub values: Vec<[f64; 2]>,
    pub dim: usize,
    /// "num/den" when the hyperdimension is exact, a decimal string otherwise.
    pub hyperdim: String,
}

pub fn character_to_json(c: &NormalizedCharacter) -> CharacterJson {
    CharacterJson {
        values: c.values.iter().map(|z| [z.re, z.im]).collect(),
        dim: c.dim,
        hyperdim: match c.hyperdim.exact() {
            Some(s) => format_rational(s),
            None => format!("{}", c.hyperdim.as_f64()),
        },
    }
}

pub fn characters_to_string(chars: &[NormalizedCharacter]) -> String {
    let data: Vec<CharacterJson> = chars.iter().map(character_to_json).collect();
    serde_json::to_string_pretty(&data).expect("serializable")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionJson {
    /// Catalog group name.
    pub group: String,
    /// Builder/catalog name or an embedded hypergroup table.
    pub target: TargetJson,
    /// Permutation of the target per group element label.
    pub maps: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TargetJson {
    Name(String),
    Table(HypergroupJson),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_zp3;
    use crate::scalar::rat;

    #[test]
    fn hypergroup_round_trip_is_bit_exact() {
        let h = build_zp3(&rat(2, 7)).unwrap();
        let text = hypergroup_to_string(&h, None);
        let back = hypergroup_from_str(&text).unwrap();
        assert_eq!(h.labels(), back.labels());
        assert_eq!(h.involution_map(), back.involution_map());
        for i in 0..h.order() {
            for j in 0..h.order() {
                assert_eq!(h.slice(i, j), back.slice(i, j));
            }
        }
        assert_eq!(text, hypergroup_to_string(&back, None));
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(hypergroup_from_str("{}").is_err());
        let h = build_zp3(&rat(1, 2)).unwrap();
        let mut data = hypergroup_to_json(&h, None);
        data.table[1][1].insert("9".into(), "1/2".into());
        assert!(hypergroup_from_json(&data).is_err());
    }
}
