//! Scenario files. Every mapping rejects unknown keys.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use furstenberg_core::algebra::catalog::by_name;
use furstenberg_core::algebra::{FiniteGroup, QuadraticNumber, Z3BElement};
use furstenberg_core::codes::{BlockCode, LocalRule};
use furstenberg_core::rotation::{CircleArc, CircleIntervalSet, RotationCoding};
use furstenberg_core::systems::FiniteConfig;
use furstenberg_core::zshift::{SequenceOracle, SetExpr};
use furstenberg_core::Symbol;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::qexpr;

/// Largest group accepted from a file; the associativity check is cubic.
pub const MAX_FILE_GROUP_ORDER: usize = 64;

pub fn read_yaml<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    from_yaml(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn from_yaml<T: DeserializeOwned>(text: &str) -> Result<T, serde_yaml::Error> {
    serde_yaml::with::singleton_map_recursive::deserialize(serde_yaml::Deserializer::from_str(text))
}

/// Emits a scenario value as YAML, with enums written as single-key maps.
pub fn to_yaml<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_yaml::Serializer::new(&mut out);
    serde_yaml::with::singleton_map_recursive::serialize(value, &mut ser).expect("scenario values serialize");
    String::from_utf8(out).expect("yaml is utf-8")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl GroupFile {
    pub fn build(&self) -> CliResult<FiniteGroup> {
        if self.order > MAX_FILE_GROUP_ORDER {
            return Err(CliError::Bound(format!("group order {} above {MAX_FILE_GROUP_ORDER}", self.order)));
        }
        if self.table.len() != self.order {
            return Err(CliError::input(format!("order {} but {} table rows", self.order, self.table.len())));
        }
        let g = FiniteGroup::from_table(&self.table)?;
        Ok(match &self.names {
            Some(n) => g.with_names(n.clone())?,
            None => g,
        })
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile { order: g.order(), table: g.rows(), names: g.names().map(<[String]>::to_vec) }
    }
}

/// A catalog name such as `S3`, or a path to a group file.
pub fn load_group(spec: &str) -> CliResult<FiniteGroup> {
    if let Some(g) = by_name(spec) {
        return Ok(g);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(CliError::input(format!("{spec} is neither a catalog group nor a file")));
    }
    read_yaml::<GroupFile>(path)?.build().map_err(|e| e.context(spec))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    pub values: Vec<Symbol>,
}

impl FunctionFile {
    pub fn build(&self, group: &FiniteGroup) -> CliResult<FiniteConfig> {
        if self.values.len() != group.order() {
            return Err(CliError::input(format!("{} values for a group of order {}", self.values.len(), group.order())));
        }
        Ok(FiniteConfig::new(self.values.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Z3BSpec {
    pub r: u8,
    #[serde(default)]
    pub support: Vec<u32>,
}

impl Z3BSpec {
    pub fn build(&self) -> CliResult<Z3BElement> {
        Ok(Z3BElement::new(self.r, self.support.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Elements {
    Integers(Vec<i64>),
    Z3B(Vec<Z3BSpec>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateFile {
    pub elements: Elements,
}

impl CandidateFile {
    pub fn integers(&self) -> CliResult<Vec<i64>> {
        match &self.elements {
            Elements::Integers(v) => Ok(v.clone()),
            Elements::Z3B(_) => Err(CliError::input("expected integer elements")),
        }
    }

    pub fn z3b(&self) -> CliResult<Vec<Z3BElement>> {
        match &self.elements {
            Elements::Z3B(v) => v.iter().map(Z3BSpec::build).collect(),
            Elements::Integers(v) if v.is_empty() => Ok(Vec::new()),
            Elements::Integers(_) => Err(CliError::input("expected elements of the form {r: .., support: [..]}")),
        }
    }
}

fn symbols_of(text: &str) -> CliResult<Vec<Symbol>> {
    let bad = || CliError::input(format!("{text:?} is not a symbol tuple"));
    if text.contains(',') {
        text.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect()
    } else {
        text.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect()
    }
}

fn tuple_key(symbols: &[Symbol], wide: bool) -> String {
    let parts: Vec<String> = symbols.iter().map(Symbol::to_string).collect();
    parts.join(if wide { "," } else { "" })
}

/// `offsets: [0,1,2]`, `rule: {"000": "0", "001": "1", …}`. Tuples with a
/// symbol above 9 are written comma-separated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub offsets: Vec<i64>,
    pub rule: BTreeMap<String, String>,
}

impl CodeFile {
    pub fn build(&self) -> CliResult<BlockCode> {
        let k = self.offsets.len();
        let mut table: BTreeMap<Vec<Symbol>, Symbol> = BTreeMap::new();
        for (key, value) in &self.rule {
            let tuple = symbols_of(key)?;
            if tuple.len() != k {
                return Err(CliError::input(format!("rule key {key:?} has {} symbols, expected {k}", tuple.len())));
            }
            let out: Symbol = value.trim().parse().map_err(|_| CliError::input(format!("rule value {value:?}")))?;
            if table.insert(tuple, out).is_some() {
                return Err(CliError::input(format!("rule key {key:?} repeated")));
            }
        }
        let mut inputs: Vec<Symbol> = table.keys().flatten().copied().collect();
        inputs.sort_unstable();
        inputs.dedup();
        let mut missing = None;
        let rule = LocalRule::from_fn(inputs, k, |w| match table.get(w) {
            Some(&s) => s,
            None => {
                missing.get_or_insert_with(|| w.to_vec());
                0
            }
        })?;
        if let Some(w) = missing {
            return Err(CliError::input(format!("rule has no entry for {}", tuple_key(&w, true))));
        }
        Ok(BlockCode::new(self.offsets.clone(), rule)?)
    }

    pub fn from_code(code: &BlockCode) -> Self {
        let rule = code.rule();
        let wide = rule.input_alphabet().iter().any(|&s| s > 9);
        let entries = (0..rule.table().len())
            .map(|i| (tuple_key(&rule.tuple(i), wide), rule.table()[i].to_string()))
            .collect();
        CodeFile { offsets: code.offsets().to_vec(), rule: entries }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcSpec {
    pub lo: String,
    pub lo_closed: bool,
    pub hi: String,
    pub hi_closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub point: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PieceSpec {
    Arc(ArcSpec),
    Point(PointSpec),
}

fn zero() -> String {
    "0".into()
}

/// `alpha: "sqrt(5)-2"`, `cells: {label: [{lo, lo_closed, hi, hi_closed} | {point}, …]}`, `base: "0"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodingFile {
    pub alpha: String,
    pub cells: BTreeMap<Symbol, Vec<PieceSpec>>,
    #[serde(default = "zero")]
    pub base: String,
}

impl CodingFile {
    pub fn build(&self) -> CliResult<RotationCoding> {
        let alpha = qexpr::parse(&self.alpha, None, None).map_err(|e| e.context("alpha"))?;
        let num = |s: &str| qexpr::parse(s, Some(&alpha), None);
        let mut cells = Vec::new();
        for (&label, pieces) in &self.cells {
            let mut arcs = Vec::new();
            let mut points = Vec::new();
            for piece in pieces {
                match piece {
                    PieceSpec::Arc(a) => arcs.push(CircleArc::new(num(&a.lo)?, a.lo_closed, num(&a.hi)?, a.hi_closed)),
                    PieceSpec::Point(p) => points.push(num(&p.point)?),
                }
            }
            let set = CircleIntervalSet::normalize(&arcs, &points).map_err(|e| CliError::from(e).context(&format!("cell {label}")))?;
            cells.push((label, set));
        }
        Ok(RotationCoding::new(alpha, cells, num(&self.base)?)?)
    }

    pub fn from_coding(c: &RotationCoding) -> Self {
        let show = |q: &QuadraticNumber| q.to_string();
        let cells = c
            .cells()
            .iter()
            .map(|(label, set)| {
                let mut pieces: Vec<PieceSpec> = set
                    .arcs()
                    .iter()
                    .map(|a| PieceSpec::Arc(ArcSpec { lo: show(&a.lo), lo_closed: a.lo_closed, hi: show(&a.hi), hi_closed: a.hi_closed }))
                    .collect();
                pieces.extend(set.isolated_points().iter().map(|p| PieceSpec::Point(PointSpec { point: show(p) })));
                (*label, pieces)
            })
            .collect();
        CodingFile { alpha: show(&c.alpha()), cells, base: show(&c.base()) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfLineSpec {
    pub from: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetOp {
    Union,
    Inter,
    Complement,
}

/// The union of the listed parts, minus `exclude`. `op` combines the sets
/// under `of` and counts as one more part.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aps: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halfline: Option<HalfLineSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub include: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exclude: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op: Option<SetOp>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub of: Vec<SetSpec>,
}

impl SetSpec {
    pub fn build(&self) -> CliResult<SetExpr> {
        let mut parts = Vec::new();
        for &[a, d] in &self.aps {
            parts.push(SetExpr::progression(a, d).ok_or_else(|| CliError::input(format!("progression [{a}, {d}] needs d >= 1")))?);
        }
        if let Some(h) = &self.halfline {
            parts.push(SetExpr::HalfLine { from: h.from });
        }
        if !self.include.is_empty() {
            parts.push(SetExpr::finite(self.include.clone()));
        }
        match (self.op, self.of.is_empty()) {
            (None, false) => return Err(CliError::input("`of` needs an `op`")),
            (Some(_), true) => return Err(CliError::input("`op` needs sets under `of`")),
            (None, true) => {}
            (Some(op), false) => {
                let mut sub: Vec<SetExpr> = self.of.iter().map(SetSpec::build).collect::<CliResult<_>>()?;
                parts.push(match op {
                    SetOp::Union => SetExpr::Union(sub),
                    SetOp::Inter => SetExpr::Inter(sub),
                    SetOp::Complement if sub.len() == 1 => sub.pop().expect("one set").complement(),
                    SetOp::Complement => return Err(CliError::input("complement takes exactly one set")),
                });
            }
        }
        let base = match parts.len() {
            0 => SetExpr::Empty,
            1 => parts.pop().expect("one part"),
            _ => SetExpr::Union(parts),
        };
        Ok(if self.exclude.is_empty() {
            base
        } else {
            SetExpr::Inter(vec![base, SetExpr::finite(self.exclude.clone()).complement()])
        })
    }
}

/// A file path or an inline value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref<T> {
    Path(String),
    Inline(T),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum OracleSpec {
    /// one digit per symbol, or comma-separated symbols
    Periodic(String),
    Set(SetSpec),
    Rotation(Ref<CodingFile>),
    CodeImage { code: Ref<CodeFile>, inner: Box<OracleSpec> },
    Override { inner: Box<OracleSpec>, patch: BTreeMap<i64, Symbol> },
    Shifted { inner: Box<OracleSpec>, by: i64 },
}

/// Resolves relative paths against the directory of the file being read.
pub struct Loader {
    pub base: PathBuf,
}

impl Loader {
    pub fn for_file(path: &Path) -> Self {
        Loader { base: path.parent().map(Path::to_path_buf).unwrap_or_default() }
    }

    fn resolve<T: DeserializeOwned + Clone>(&self, r: &Ref<T>) -> CliResult<(T, Loader)> {
        match r {
            Ref::Inline(v) => Ok((v.clone(), Loader { base: self.base.clone() })),
            Ref::Path(p) => {
                let path = self.base.join(p);
                Ok((read_yaml(&path)?, Loader::for_file(&path)))
            }
        }
    }

    pub fn oracle(&self, spec: &OracleSpec) -> CliResult<SequenceOracle> {
        Ok(match spec {
            OracleSpec::Periodic(w) => SequenceOracle::periodic(symbols_of(w)?)?,
            OracleSpec::Set(s) => SequenceOracle::set(s.build()?),
            OracleSpec::Rotation(r) => SequenceOracle::rotation(self.resolve(r)?.0.build()?),
            OracleSpec::CodeImage { code, inner } => {
                SequenceOracle::code_image(self.resolve(code)?.0.build()?, self.oracle(inner)?)?
            }
            OracleSpec::Override { inner, patch } => SequenceOracle::with_patch(self.oracle(inner)?, patch.clone()),
            OracleSpec::Shifted { inner, by } => SequenceOracle::shifted(self.oracle(inner)?, *by),
        })
    }
}

pub fn load_oracle(path: &Path) -> CliResult<SequenceOracle> {
    let spec: OracleSpec = read_yaml(path)?;
    Loader::for_file(path).oracle(&spec).map_err(|e| e.context(&path.display().to_string()))
}

pub fn load_coding(path: &Path) -> CliResult<RotationCoding> {
    read_yaml::<CodingFile>(path)?.build().map_err(|e| e.context(&path.display().to_string()))
}

pub fn load_code(path: &Path) -> CliResult<BlockCode> {
    read_yaml::<CodeFile>(path)?.build().map_err(|e| e.context(&path.display().to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use furstenberg_core::algebra::catalog::catalog;
    use furstenberg_core::rotation::fixtures;

    fn parse<T: DeserializeOwned>(s: &str) -> T {
        from_yaml(s).unwrap()
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(from_yaml::<CodeFile>("offsets: [0]\nrule: {\"0\": \"1\"}\nextra: 1\n").is_err());
        assert!(from_yaml::<OracleSpec>("set: {aps: [[0, 2]], other: 1}\n").is_err());
        assert!(from_yaml::<CodingFile>("alpha: sqrt(2)-1\ncells: {}\nbeta: 0\n").is_err());
    }

    #[test]
    fn sets() {
        let s: OracleSpec = parse("set:\n  aps: [[0, 2]]\n  include: [1]\n  exclude: [0]\n");
        let o = Loader { base: PathBuf::new() }.oracle(&s).unwrap();
        assert_eq!(o.eval_window(-2, 4).unwrap(), vec![1, 0, 0, 1, 1, 0, 1]);
        let s: OracleSpec = parse("set: {op: complement, of: [{halfline: {from: 0}}]}\n");
        let o = Loader { base: PathBuf::new() }.oracle(&s).unwrap();
        assert_eq!(o.eval_window(-1, 0).unwrap(), vec![1, 0]);
        assert!(parse::<OracleSpec>("set: {op: complement}\n").clone().eq(&OracleSpec::Set(SetSpec {
            op: Some(SetOp::Complement),
            ..SetSpec::default()
        })));
    }

    #[test]
    fn code_round_trip() {
        let code = BlockCode::parity(vec![0, 1, 2]).unwrap();
        let file = CodeFile::from_code(&code);
        assert_eq!(file.rule["011"], "0");
        let back: CodeFile = parse(&to_yaml(&file));
        assert_eq!(back, file);
        assert_eq!(back.build().unwrap(), code);
        assert!(parse::<CodeFile>("offsets: [0, 1]\nrule: {\"00\": \"0\", \"01\": \"1\"}\n").build().is_err());
    }

    #[test]
    fn coding_round_trip() {
        for (name, c) in fixtures::all() {
            let file = CodingFile::from_coding(&c);
            let back: CodingFile = parse(&to_yaml(&file));
            assert_eq!(back, file, "{name}");
            let rebuilt = back.build().unwrap();
            assert_eq!(rebuilt.cells(), c.cells(), "{name}");
            assert_eq!(CodingFile::from_coding(&rebuilt), file);
        }
    }

    #[test]
    fn group_round_trip() {
        for (name, g) in catalog() {
            let file = GroupFile::from_group(&g);
            let back: GroupFile = parse(&to_yaml(&file));
            assert_eq!(back, file, "{name}");
            assert_eq!(back.build().unwrap().rows(), g.rows());
        }
    }

    #[test]
    fn oracle_round_trip() {
        let text = "code_image:\n  code:\n    offsets: [0, 1]\n    rule: {\"00\": \"0\", \"01\": \"1\", \"10\": \"1\", \"11\": \"0\"}\n  inner:\n    override:\n      inner: {periodic: \"0110\"}\n      patch: {3: 0}\n";
        let spec: OracleSpec = parse(text);
        assert_eq!(parse::<OracleSpec>(&to_yaml(&spec)), spec);
        let o = Loader { base: PathBuf::new() }.oracle(&spec).unwrap();
        assert_eq!(o.eval_window(0, 3).unwrap(), vec![1, 0, 1, 0]);
    }

    #[test]
    fn candidates() {
        let c: CandidateFile = parse("elements: [1, 2, 5]\n");
        assert_eq!(c.integers().unwrap(), vec![1, 2, 5]);
        let c: CandidateFile = parse("elements: [{r: 1, support: [1, 2]}]\n");
        assert_eq!(c.z3b().unwrap(), vec![Z3BElement::new(1, vec![1, 2]).unwrap()]);
    }
}
