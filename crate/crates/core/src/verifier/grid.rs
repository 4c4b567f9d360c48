//! Sweep grids: flat `key = value` lines, `[name]` section headers, `#`
//! comments, and `;` as an inline line separator.
//!
//! Values are comma lists of integers or inclusive ranges `lo..hi`; a range
//! with `hi < lo` is empty. Keys: `mode` (gl, sl), `ell` (2, 3), `case`
//! (1mod4, 3mod4), `a`, `atilde`, `d`, `w`, and the global `cap`.

use serde::Serialize;
use thiserror::Error;

use super::{Mode, SweepPoint, VerifierError};
use crate::block::{BlockParams, Case2};
use crate::groups::DEFAULT_ORDER_CAP;
use crate::partition::Ell;

/// The built-in grid used when no grid is given.
pub const DEFAULT_GRID: &str = include_str!("../../grids/default.grid");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("grid line {line}: {message}")]
pub struct GridError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridSection {
    pub name: Option<String>,
    pub mode: Mode,
    pub ell: Ell,
    pub cases: Vec<Case2>,
    pub a: Vec<u32>,
    pub atilde: Vec<u32>,
    pub d: Vec<u32>,
    pub w: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepGrid {
    pub sections: Vec<GridSection>,
    pub brute_force_cap: u64,
}

impl Default for SweepGrid {
    fn default() -> Self {
        parse_grid(DEFAULT_GRID).expect("built-in grid parses")
    }
}

impl SweepGrid {
    /// Grid points in section order, then by case, a or ã, d and w.
    pub fn points(&self) -> Result<Vec<SweepPoint>, VerifierError> {
        let mut out = Vec::new();
        for s in &self.sections {
            let mut push = |params: BlockParams| out.push(SweepPoint { mode: s.mode, params });
            match (s.mode, s.ell) {
                (Mode::Sl, _) => {
                    for &a in &s.a {
                        for &w in &s.w {
                            push(BlockParams::gl3(a, 1, w)?);
                        }
                    }
                }
                (Mode::Gl, Ell::Three) => {
                    for &a in &s.a {
                        for &d in &s.d {
                            for &w in &s.w {
                                push(BlockParams::gl3(a, d, w)?);
                            }
                        }
                    }
                }
                (Mode::Gl, Ell::Two) => {
                    for &case in &s.cases {
                        let tops = if case == Case2::ThreeMod4 { &s.atilde } else { &s.a };
                        for &t in tops {
                            for &w in &s.w {
                                push(match case {
                                    Case2::ThreeMod4 => BlockParams::gl2_three_mod4(t, w)?,
                                    _ => BlockParams::gl2_one_plus_four(t, w)?,
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Default)]
struct Draft {
    name: Option<String>,
    line: usize,
    mode: Option<Mode>,
    ell: Option<Ell>,
    cases: Option<Vec<Case2>>,
    a: Option<Vec<u32>>,
    atilde: Option<Vec<u32>>,
    d: Option<Vec<u32>>,
    w: Option<Vec<u32>>,
    touched: bool,
}

fn err(line: usize, message: impl Into<String>) -> GridError {
    GridError { line, message: message.into() }
}

fn parse_u64(s: &str, line: usize) -> Result<u64, GridError> {
    s.trim().parse().map_err(|_| err(line, format!("'{}' is not a nonnegative integer", s.trim())))
}

fn parse_list(v: &str, line: usize) -> Result<Vec<u32>, GridError> {
    let mut out = Vec::new();
    for item in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (parse_u64(lo, line)?, parse_u64(hi, line)?);
            if hi > u32::MAX as u64 {
                return Err(err(line, "range bound too large"));
            }
            out.extend(lo as u32..=hi as u32);
        } else {
            let x = parse_u64(item, line)?;
            out.push(u32::try_from(x).map_err(|_| err(line, "value too large"))?);
        }
    }
    Ok(out)
}

impl Draft {
    fn finish(self) -> Result<Option<GridSection>, GridError> {
        if !self.touched {
            return Ok(None);
        }
        let line = self.line;
        let mode = self.mode.unwrap_or(Mode::Gl);
        let ell = match (mode, self.ell) {
            (Mode::Sl, Some(Ell::Two)) => return Err(err(line, "mode sl needs ell = 3")),
            (_, Some(e)) => e,
            (Mode::Sl, None) => Ell::Three,
            (Mode::Gl, None) => return Err(err(line, "missing key 'ell'")),
        };
        let w = self.w.ok_or_else(|| err(line, "missing key 'w'"))?;
        let need = |v: Option<Vec<u32>>, key: &str| v.ok_or_else(|| err(line, format!("missing key '{key}'")));
        let mut section = GridSection {
            name: self.name,
            mode,
            ell,
            cases: Vec::new(),
            a: Vec::new(),
            atilde: Vec::new(),
            d: vec![1],
            w,
        };
        match ell {
            Ell::Three => {
                if self.cases.is_some() || self.atilde.is_some() {
                    return Err(err(line, "'case' and 'atilde' apply to ell = 2 only"));
                }
                section.cases = vec![Case2::NotApplicable];
                section.a = need(self.a, "a")?;
                if let Some(d) = self.d {
                    if mode == Mode::Sl && d.iter().any(|&x| x != 1) {
                        return Err(err(line, "mode sl needs d = 1"));
                    }
                    section.d = d;
                }
            }
            Ell::Two => {
                if self.d.is_some() {
                    return Err(err(line, "'d' applies to ell = 3 only"));
                }
                let cases = match self.cases {
                    Some(c) => c,
                    None => {
                        let mut c = Vec::new();
                        if self.a.is_some() {
                            c.push(Case2::OnePlusFour);
                        }
                        if self.atilde.is_some() {
                            c.push(Case2::ThreeMod4);
                        }
                        c
                    }
                };
                if cases.is_empty() {
                    return Err(err(line, "ell = 2 needs 'a' or 'atilde'"));
                }
                if cases.contains(&Case2::OnePlusFour) {
                    section.a = need(self.a, "a")?;
                }
                if cases.contains(&Case2::ThreeMod4) {
                    section.atilde = need(self.atilde, "atilde")?;
                }
                section.cases = cases;
            }
        }
        Ok(Some(section))
    }
}

/// Parses a grid file or an inline grid such as `ell=3; a=1..3; w=1..30`.
pub fn parse_grid(text: &str) -> Result<SweepGrid, GridError> {
    let mut sections = Vec::new();
    let mut cap = DEFAULT_ORDER_CAP;
    let mut cur = Draft { line: 1, ..Default::default() };
    for (idx, raw_line) in text.lines().enumerate() {
        let n = idx + 1;
        for part in raw_line.split(';') {
            let s = part.split('#').next().unwrap_or("").trim();
            if s.is_empty() {
                continue;
            }
            if let Some(name) = s.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or_else(|| err(n, "unclosed section header"))?;
                let prev = std::mem::replace(&mut cur, Draft { line: n, ..Default::default() });
                sections.extend(prev.finish()?);
                cur.name = Some(name.trim().to_string());
                continue;
            }
            let (k, v) = s.split_once('=').ok_or_else(|| err(n, format!("expected key = value, got '{s}'")))?;
            let (k, v) = (k.trim(), v.trim());
            if k == "cap" {
                cap = parse_u64(v, n)?;
                continue;
            }
            cur.touched = true;
            match k {
                "mode" => {
                    cur.mode = Some(match v {
                        "gl" => Mode::Gl,
                        "sl" => Mode::Sl,
                        _ => return Err(err(n, format!("mode must be gl or sl, got '{v}'"))),
                    })
                }
                "ell" => {
                    let e = parse_u64(v, n)?;
                    cur.ell = Some(Ell::from_u32(e as u32).ok_or_else(|| err(n, "ell must be 2 or 3"))?);
                }
                "case" => {
                    let mut cs = Vec::new();
                    for c in v.split(',').map(str::trim).filter(|c| !c.is_empty()) {
                        cs.push(match c {
                            "1mod4" => Case2::OnePlusFour,
                            "3mod4" => Case2::ThreeMod4,
                            _ => return Err(err(n, format!("case must be 1mod4 or 3mod4, got '{c}'"))),
                        });
                    }
                    cur.cases = Some(cs);
                }
                "a" => cur.a = Some(parse_list(v, n)?),
                "atilde" => cur.atilde = Some(parse_list(v, n)?),
                "d" => cur.d = Some(parse_list(v, n)?),
                "w" => cur.w = Some(parse_list(v, n)?),
                _ => return Err(err(n, format!("unknown key '{k}'"))),
            }
        }
    }
    sections.extend(cur.finish()?);
    Ok(SweepGrid { sections, brute_force_cap: cap })
}
