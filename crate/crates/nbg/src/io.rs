//! File formats: JSON games, distributions and plain-text digraphs.
//!
//! Game files look like
//!
//! ```json
//! { "n": 2, "r": 1,
//!   "costs": [{"type": "const", "b": 1}, {"type": "affine", "a": 1, "b": "1/4"}],
//!   "alpha": [[1, 2, "1/4"]], "symmetric": true }
//! ```
//!
//! Vertices are 1-indexed. A game is loaded exactly (rational mode) when
//! every number in it is an integer or a string such as `"3/4"` or `"0.25"`;
//! a JSON float anywhere switches the whole game to float mode. The general
//! (non-graphical) examples are available as `{"builtin": "dilemma"}` and
//! `{"builtin": "discontinuous"}`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use nbg_core::graph::Digraph;
use nbg_core::{instances, Game, GameKind, InfluenceMatrix, MassDistribution, Rational, Scalar, VertexCostFn};
use serde::{Deserialize, Serialize};

use crate::num::{parse_list, Num};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{context}: malformed JSON at line {line}, column {column}: {message}")]
    Json { context: String, line: usize, column: usize, message: String },
    #[error("{context}: {message}")]
    Invalid { context: String, message: String },
}

impl InputError {
    fn invalid(context: &str, message: impl fmt::Display) -> Self {
        InputError::Invalid { context: context.to_string(), message: message.to_string() }
    }

    fn json(context: &str, e: &serde_json::Error) -> Self {
        // serde_json appends " at line L column C" to its messages.
        let msg = e.to_string();
        let message = match msg.rfind(" at line ") {
            Some(k) => msg[..k].to_string(),
            None => msg,
        };
        InputError::Json { context: context.to_string(), line: e.line(), column: e.column(), message }
    }
}

/// A loaded game in whichever numeric mode its file asked for.
#[derive(Clone, Debug)]
pub enum AnyGame {
    Exact(Game<Rational>),
    Float(Game<f64>),
}

impl AnyGame {
    pub fn n(&self) -> usize {
        match self {
            AnyGame::Exact(g) => g.n(),
            AnyGame::Float(g) => g.n(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, AnyGame::Exact(_))
    }

    pub fn to_float(&self) -> Game<f64> {
        match self {
            AnyGame::Exact(g) => g.to_float(),
            AnyGame::Float(g) => g.clone(),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum CostSpec {
    Affine { a: Num, b: Num },
    Poly { coeffs: Vec<Num> },
    Const { b: Num },
}

impl CostSpec {
    fn numbers(&self) -> Vec<&Num> {
        match self {
            CostSpec::Affine { a, b } => vec![a, b],
            CostSpec::Poly { coeffs } => coeffs.iter().collect(),
            CostSpec::Const { b } => vec![b],
        }
    }
}

/// The on-disk form of a graphical game.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub n: usize,
    pub r: Num,
    pub costs: Vec<CostSpec>,
    #[serde(default)]
    pub alpha: Vec<(usize, usize, Num)>,
    #[serde(default)]
    pub symmetric: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BuiltinFile {
    builtin: String,
}

pub const BUILTINS: &[&str] = &["dilemma", "discontinuous"];

fn builtin<S: Scalar>(name: &str) -> Option<Game<S>> {
    match name {
        "dilemma" => Some(instances::two_commodity_dilemma()),
        "discontinuous" => Some(instances::discontinuous()),
        _ => None,
    }
}

impl GameFile {
    pub fn is_exact(&self) -> bool {
        self.r.is_exact()
            && self.costs.iter().flat_map(CostSpec::numbers).all(Num::is_exact)
            && self.alpha.iter().all(|(_, _, v)| v.is_exact())
    }

    /// Builds the game, in rational mode when every number is exact.
    pub fn to_game(&self) -> Result<AnyGame, InputError> {
        if self.is_exact() {
            let conv = |v: &Num| v.exact().expect("checked exact").clone();
            self.build(&conv).map(AnyGame::Exact)
        } else {
            self.build(&Num::to_f64).map(AnyGame::Float)
        }
    }

    fn build<S: Scalar>(&self, conv: &dyn Fn(&Num) -> S) -> Result<Game<S>, InputError> {
        let ctx = "game";
        if self.costs.len() != self.n {
            return Err(InputError::invalid(ctx, format!("n = {} but {} costs given", self.n, self.costs.len())));
        }
        let costs = self
            .costs
            .iter()
            .map(|c| match c {
                CostSpec::Affine { a, b } => VertexCostFn::Affine { slope: conv(a), intercept: conv(b) },
                CostSpec::Poly { coeffs } => VertexCostFn::Polynomial(coeffs.iter().map(conv).collect()),
                CostSpec::Const { b } => VertexCostFn::Constant(conv(b)),
            })
            .collect();
        let mut entries: BTreeMap<(usize, usize), S> = BTreeMap::new();
        let mut put = |i: usize, j: usize, v: S| -> Result<(), InputError> {
            match entries.get(&(i, j)) {
                Some(old) if *old != v => Err(InputError::invalid(
                    ctx,
                    format!("conflicting values for alpha[{}][{}]", i + 1, j + 1),
                )),
                _ => {
                    entries.insert((i, j), v);
                    Ok(())
                }
            }
        };
        for (k, (i, j, v)) in self.alpha.iter().enumerate() {
            if *i == 0 || *j == 0 || *i > self.n || *j > self.n {
                return Err(InputError::invalid(
                    ctx,
                    format!("alpha entry {} refers to vertex outside 1..={}", k + 1, self.n),
                ));
            }
            let v = conv(v);
            put(i - 1, j - 1, v.clone())?;
            if self.symmetric {
                put(j - 1, i - 1, v)?;
            }
        }
        let influence = InfluenceMatrix::new(self.n, entries.into_iter().map(|((i, j), v)| (i, j, v)))
            .map_err(|e| InputError::invalid(ctx, e))?;
        Game::graphical(conv(&self.r), costs, influence).map_err(|e| InputError::invalid(ctx, e))
    }

    /// File form of a graphical game with non-opaque costs.
    pub fn from_game<S: Scalar>(game: &Game<S>) -> Result<GameFile, InputError> {
        let ctx = "game";
        let GameKind::Graphical { vertex_costs, influence } = game.kind() else {
            return Err(InputError::invalid(ctx, "only graphical games have a file form"));
        };
        let num = |v: &S| -> Num {
            if S::EXACT {
                v.to_string().parse().expect("exact scalars print as fractions")
            } else {
                Num::Float(v.to_f64())
            }
        };
        let costs = vertex_costs
            .iter()
            .map(|f| match f {
                VertexCostFn::Constant(b) => Ok(CostSpec::Const { b: num(b) }),
                VertexCostFn::Affine { slope, intercept } => Ok(CostSpec::Affine { a: num(slope), b: num(intercept) }),
                VertexCostFn::Polynomial(c) => Ok(CostSpec::Poly { coeffs: c.iter().map(num).collect() }),
                VertexCostFn::Opaque(_) => Err(InputError::invalid(ctx, "opaque vertex costs cannot be saved")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let symmetric = influence.is_symmetric();
        let alpha = influence
            .entries()
            .filter(|(i, j, _)| !symmetric || i < j)
            .map(|(i, j, v)| (i + 1, j + 1, num(v)))
            .collect();
        Ok(GameFile { n: game.n(), r: num(game.r()), costs, alpha, symmetric })
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io { path: path.display().to_string(), source })
}

/// Parses a game from JSON text. `context` names the source in errors.
pub fn parse_game(text: &str, context: &str) -> Result<AnyGame, InputError> {
    // Syntax first, so truncated files report where they stop.
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| InputError::json(context, &e))?;
    if value.get("builtin").is_some() {
        let b: BuiltinFile = serde_json::from_str(text).map_err(|e| InputError::json(context, &e))?;
        return load_builtin(&b.builtin, context);
    }
    let file: GameFile = serde_json::from_str(text).map_err(|e| InputError::json(context, &e))?;
    file.to_game()
}

fn load_builtin(name: &str, context: &str) -> Result<AnyGame, InputError> {
    builtin::<Rational>(name)
        .map(AnyGame::Exact)
        .ok_or_else(|| InputError::invalid(context, format!("unknown builtin {name:?}; known: {}", BUILTINS.join(", "))))
}

/// Loads a game file, or a builtin given as `builtin:NAME`.
pub fn load_game(spec: &str) -> Result<AnyGame, InputError> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return load_builtin(name, spec);
    }
    let path = Path::new(spec);
    parse_game(&read(path)?, &path.display().to_string())
}

pub fn game_to_json<S: Scalar>(game: &Game<S>) -> Result<String, InputError> {
    let file = GameFile::from_game(game)?;
    Ok(serde_json::to_string_pretty(&file).expect("game files serialize") + "\n")
}

/// Distribution values as read: either a JSON array in a file or an inline
/// list such as `3/4,1/4`.
pub fn parse_distribution(text: &str, context: &str) -> Result<Vec<Num>, InputError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        serde_json::from_str(text).map_err(|e| InputError::json(context, &e))
    } else {
        parse_list(text).map_err(|e| InputError::invalid(context, e))
    }
}

pub fn load_distribution(path: &Path) -> Result<Vec<Num>, InputError> {
    parse_distribution(&read(path)?, &path.display().to_string())
}

/// A game and a distribution brought to a common numeric mode: exact when
/// both are exact, float otherwise.
pub enum Paired {
    Exact(Game<Rational>, MassDistribution<Rational>),
    Float(Game<f64>, MassDistribution<f64>),
}

pub fn pair(game: &AnyGame, values: &[Num]) -> Result<Paired, InputError> {
    let ctx = "distribution";
    if values.len() != game.n() {
        return Err(InputError::invalid(ctx, format!("{} values for a game on {} vertices", values.len(), game.n())));
    }
    match game {
        AnyGame::Exact(g) if values.iter().all(Num::is_exact) => {
            let x = values.iter().map(|v| v.exact().expect("checked exact").clone()).collect();
            let x = MassDistribution::new(x, g.r().clone()).map_err(|e| InputError::invalid(ctx, e))?;
            Ok(Paired::Exact(g.clone(), x))
        }
        _ => {
            let g = game.to_float();
            let x = values.iter().map(Num::to_f64).collect();
            let x = MassDistribution::new(x, *g.r()).map_err(|e| InputError::invalid(ctx, e))?;
            Ok(Paired::Float(g, x))
        }
    }
}

/// Plain-text digraph: first line `n`, then one `i j` arc per line,
/// 1-indexed. Blank lines and `#` comments are skipped.
pub fn parse_digraph(text: &str, context: &str) -> Result<Digraph, InputError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let at = |line: usize, msg: String| InputError::invalid(context, format!("line {line}: {msg}"));
    let (first, header) = lines.next().ok_or_else(|| InputError::invalid(context, "empty digraph file"))?;
    let n: usize = header.parse().map_err(|_| at(first, format!("expected vertex count, found {header:?}")))?;
    let mut arcs = Vec::new();
    for (line, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        let [i, j] = parts[..] else {
            return Err(at(line, format!("expected `i j`, found {l:?}")));
        };
        let parse = |s: &str| -> Result<usize, InputError> {
            match s.parse::<usize>() {
                Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
                _ => Err(at(line, format!("vertex {s:?} not in 1..={n}"))),
            }
        };
        arcs.push((parse(i)?, parse(j)?));
    }
    Digraph::new(n, arcs).map_err(|e| InputError::invalid(context, e))
}

pub fn load_digraph(path: &Path) -> Result<Digraph, InputError> {
    parse_digraph(&read(path)?, &path.display().to_string())
}

pub fn digraph_to_text(d: &Digraph) -> String {
    let mut out = format!("{}\n", d.n());
    for (i, j) in d.arcs() {
        out.push_str(&format!("{} {}\n", i + 1, j + 1));
    }
    out
}
