//! Gadget tables on disk: JSON with types as array-of-arrays (`null` for
//! ∞), graphs in the shared text format, and F-sets as hex bitsets.

use girthlab_core::circular::PQParams;
use girthlab_core::dist::Dist;
use girthlab_core::gadget::{GadgetEntry, GadgetParams, GadgetTable, SearchStatus};
use girthlab_core::precolor::FSet;
use girthlab_core::types::TypeMatrix;
use serde::{Deserialize, Serialize};

use crate::format::{emit_rooted, parse_graph_file, ParsedGraph};

pub const TABLE_SCHEMA: &str = "girthlab-gadgets-v1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableFile {
    pub schema_version: String,
    pub k: usize,
    pub p: u32,
    pub q: u32,
    pub d: u64,
    pub type_bound: u64,
    pub search_budget: u64,
    pub vertex_cap: usize,
    pub entries: Vec<EntryFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryFile {
    /// `(k+1)×(k+1)` matrix, `null` encoding ∞.
    pub type_matrix: Vec<Vec<Option<u64>>>,
    /// Gadget in the shared text graph format (with roots and certificate).
    pub graph: String,
    pub fset_hex: String,
    pub status: String,
    pub candidates_seen: u64,
    pub order: usize,
}

pub fn type_to_rows(m: &TypeMatrix) -> Vec<Vec<Option<u64>>> {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| m.get(i, j).finite()).collect())
        .collect()
}

pub fn type_from_rows(rows: &[Vec<Option<u64>>]) -> Result<TypeMatrix, String> {
    let dim = rows.len();
    if dim == 0 || rows.iter().any(|r| r.len() != dim) {
        return Err("type matrix must be square".into());
    }
    let entries: Vec<Dist> = rows
        .iter()
        .flatten()
        .map(|e| e.map_or(Dist::Inf, Dist::Fin))
        .collect();
    TypeMatrix::new(dim - 1, entries).map_err(|e| e.to_string())
}

pub fn to_file(table: &GadgetTable) -> TableFile {
    TableFile {
        schema_version: TABLE_SCHEMA.to_string(),
        k: table.params.k,
        p: table.params.pq.p(),
        q: table.params.pq.q(),
        d: table.params.d,
        type_bound: table.params.type_bound,
        search_budget: table.params.search_budget,
        vertex_cap: table.params.vertex_cap,
        entries: table
            .entries
            .iter()
            .map(|e| EntryFile {
                type_matrix: type_to_rows(&e.type_matrix),
                graph: emit_rooted(&e.gadget),
                fset_hex: e.fset.to_hex(),
                status: e.status.to_string(),
                candidates_seen: e.candidates_seen,
                order: e.gadget.vertex_count(),
            })
            .collect(),
    }
}

pub fn from_file(file: &TableFile) -> Result<GadgetTable, String> {
    let pq = PQParams::new(file.p, file.q).map_err(|e| e.to_string())?;
    let params = GadgetParams {
        k: file.k,
        pq,
        d: file.d,
        type_bound: file.type_bound,
        search_budget: file.search_budget,
        vertex_cap: file.vertex_cap,
    };
    let mut entries = Vec::with_capacity(file.entries.len());
    for e in &file.entries {
        let ty = type_from_rows(&e.type_matrix)?;
        let gadget = match parse_graph_file(&e.graph).map_err(|err| err.to_string())? {
            ParsedGraph::Rooted(t) => t,
            ParsedGraph::Plain(_) => return Err("gadget graph is missing roots".into()),
        };
        let fset = FSet::from_hex(file.k, file.p, &e.fset_hex)
            .ok_or_else(|| "bad F-set hex".to_string())?;
        let status = match e.status.as_str() {
            "exhaustive" => SearchStatus::Exhaustive,
            "budget-limited" => SearchStatus::BudgetLimited,
            other => return Err(format!("unknown status `{other}`")),
        };
        entries.push(GadgetEntry {
            type_matrix: ty,
            gadget,
            fset,
            status,
            candidates_seen: e.candidates_seen,
        });
    }
    Ok(GadgetTable { params, entries })
}

pub fn write_json(table: &GadgetTable) -> String {
    serde_json::to_string_pretty(&to_file(table)).expect("table serializes")
}

pub fn read_json(json: &str) -> Result<GadgetTable, String> {
    let file: TableFile = serde_json::from_str(json).map_err(|e| e.to_string())?;
    if file.schema_version != TABLE_SCHEMA {
        return Err(format!("unsupported schema `{}`", file.schema_version));
    }
    from_file(&file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use girthlab_core::circular::DEFAULT_TABLE_LIMIT;
    use girthlab_core::gadget::synthesize_gadgets;

    #[test]
    fn table_round_trips() {
        let params = GadgetParams {
            k: 1,
            pq: PQParams::new(5, 2).unwrap(),
            d: 1,
            type_bound: 2,
            search_budget: 500,
            vertex_cap: 5,
        };
        let table = synthesize_gadgets(params, 10_000, DEFAULT_TABLE_LIMIT).unwrap();
        let json = write_json(&table);
        let back = read_json(&json).unwrap();
        assert_eq!(back.entries.len(), table.entries.len());
        for (a, b) in table.entries.iter().zip(&back.entries) {
            assert_eq!(a.type_matrix, b.type_matrix);
            assert_eq!(a.fset, b.fset);
            assert_eq!(a.status, b.status);
            assert_eq!(a.gadget.graph(), b.gadget.graph());
        }
    }
}
