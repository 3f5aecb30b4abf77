use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::diagram::{Component, Diagram, DiagramError, HandleKind};
use super::planar::{PdCrossing, PlanarData};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Diagram { line: usize, source: DiagramError },
    #[error("{0}")]
    Validation(DiagramError),
    #[error("empty input: a diagram needs at least one line")]
    Empty,
}

const STALE_KEY: &str = "planar-stale";

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

impl Diagram {
    /// Parse the line-oriented diagram text format:
    ///
    /// ```text
    /// component <id> dotted|framed <int> [unknot]
    /// lk <id> <id> <int>
    /// pd <id> X(a,b,c,d,+|-) ...
    /// threehandles <n>
    /// meta <key> <value>
    /// ```
    ///
    /// `#` starts a comment; blank lines are ignored.
    pub fn parse(text: &str) -> Result<Diagram, ParseError> {
        let mut d = Diagram::new();
        let mut planar = PlanarData::new();
        let mut has_pd = false;
        let mut lk_lines: Vec<(usize, String, String, BigInt)> = Vec::new();
        let mut saw_content = false;
        let mut stale_flag = false;

        for (ln0, raw) in text.lines().enumerate() {
            let line = ln0 + 1;
            let content = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            };
            let mut toks = content.split_whitespace();
            let Some(head) = toks.next() else { continue };
            saw_content = true;
            match head {
                "component" => {
                    let id = toks
                        .next()
                        .ok_or_else(|| syntax(line, "component needs an id"))?;
                    check_id(line, id)?;
                    let kind_tok = toks
                        .next()
                        .ok_or_else(|| syntax(line, "component needs dotted|framed"))?;
                    let kind = match kind_tok {
                        "dotted" => HandleKind::Dotted,
                        "framed" => {
                            let f = toks
                                .next()
                                .ok_or_else(|| syntax(line, "framed needs an integer"))?;
                            let f = BigInt::from_str(f)
                                .map_err(|_| syntax(line, format!("bad framing {f:?}")))?;
                            HandleKind::Framed(f)
                        }
                        other => {
                            return Err(syntax(line, format!("expected dotted|framed, got {other:?}")))
                        }
                    };
                    let mut cert = false;
                    for t in toks.by_ref() {
                        match t {
                            "unknot" => cert = true,
                            other => {
                                return Err(syntax(line, format!("unexpected token {other:?}")))
                            }
                        }
                    }
                    d.add_component(Component {
                        id: id.to_string(),
                        kind,
                        unknot_certificate: cert,
                    })
                    .map_err(|source| ParseError::Diagram { line, source })?;
                }
                "lk" => {
                    let a = toks.next().ok_or_else(|| syntax(line, "lk needs two ids"))?;
                    let b = toks.next().ok_or_else(|| syntax(line, "lk needs two ids"))?;
                    let v = toks.next().ok_or_else(|| syntax(line, "lk needs a value"))?;
                    let v = BigInt::from_str(v)
                        .map_err(|_| syntax(line, format!("bad linking number {v:?}")))?;
                    if toks.next().is_some() {
                        return Err(syntax(line, "trailing tokens after lk"));
                    }
                    lk_lines.push((line, a.to_string(), b.to_string(), v));
                }
                "pd" => {
                    let id = toks.next().ok_or_else(|| syntax(line, "pd needs an id"))?;
                    let mut xs = Vec::new();
                    for t in toks {
                        xs.push(parse_crossing(line, t)?);
                    }
                    has_pd = true;
                    planar.insert_component(id, xs);
                }
                "threehandles" => {
                    let n = toks
                        .next()
                        .ok_or_else(|| syntax(line, "threehandles needs a count"))?;
                    let n: u32 = n
                        .parse()
                        .map_err(|_| syntax(line, format!("bad count {n:?}")))?;
                    if toks.next().is_some() {
                        return Err(syntax(line, "trailing tokens after threehandles"));
                    }
                    d.set_three_handles(n);
                }
                "meta" => {
                    let k = toks.next().ok_or_else(|| syntax(line, "meta needs a key"))?;
                    let rest: Vec<&str> = toks.collect();
                    if k == STALE_KEY {
                        stale_flag = rest.join(" ") == "true";
                    } else {
                        d.set_meta(k, &rest.join(" "));
                    }
                }
                other => return Err(syntax(line, format!("unknown directive {other:?}"))),
            }
        }
        if !saw_content {
            return Err(ParseError::Empty);
        }
        for (line, a, b, v) in lk_lines {
            d.set_lk(&a, &b, v)
                .map_err(|source| ParseError::Diagram { line, source })?;
        }
        if has_pd {
            d.set_planar(Some(planar));
        }
        d.set_planar_stale(stale_flag);
        d.validate().map_err(ParseError::Validation)?;
        Ok(d)
    }

    /// Canonical serialization; `parse(serialize(d))` reproduces `d` exactly.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for c in self.components() {
            match &c.kind {
                HandleKind::Dotted => {
                    write!(out, "component {} dotted", c.id).unwrap();
                }
                HandleKind::Framed(f) => {
                    write!(out, "component {} framed {}", c.id, f).unwrap();
                }
            }
            if c.unknot_certificate {
                out.push_str(" unknot");
            }
            out.push('\n');
        }
        for ((a, b), v) in self.lk_entries() {
            if !v.is_zero() {
                writeln!(out, "lk {a} {b} {v}").unwrap();
            }
        }
        if let Some(p) = self.planar() {
            for id in p.component_ids() {
                let xs = p.crossings_of(id).unwrap();
                let mut line = format!("pd {id}");
                for x in xs {
                    let s = if x.sign > 0 { '+' } else { '-' };
                    write!(line, " X({},{},{},{},{s})", x.a, x.b, x.c, x.d).unwrap();
                }
                out.push_str(&line);
                out.push('\n');
            }
        }
        if self.three_handles() > 0 {
            writeln!(out, "threehandles {}", self.three_handles()).unwrap();
        }
        let mut meta = self.meta().clone();
        meta.remove(STALE_KEY);
        if self.planar_is_stale() {
            meta.insert(STALE_KEY.to_string(), "true".to_string());
        }
        for (k, v) in &meta {
            if v.is_empty() {
                writeln!(out, "meta {k}").unwrap();
            } else {
                writeln!(out, "meta {k} {v}").unwrap();
            }
        }
        out
    }
}

fn check_id(line: usize, id: &str) -> Result<(), ParseError> {
    let ok = !id.is_empty()
        && id
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == ':');
    if ok {
        Ok(())
    } else {
        Err(syntax(line, format!("invalid component id {id:?}")))
    }
}

fn parse_crossing(line: usize, tok: &str) -> Result<PdCrossing, ParseError> {
    let inner = tok
        .strip_prefix("X(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| syntax(line, format!("malformed PD token {tok:?}")))?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 5 {
        return Err(syntax(line, format!("PD token needs 5 fields: {tok:?}")));
    }
    let mut nums = [0u32; 4];
    for (i, p) in parts[..4].iter().enumerate() {
        nums[i] = p
            .parse()
            .map_err(|_| syntax(line, format!("bad arc label {p:?} in {tok:?}")))?;
    }
    let sign = match parts[4] {
        "+" => 1,
        "-" => -1,
        other => return Err(syntax(line, format!("bad crossing sign {other:?} in {tok:?}"))),
    };
    Ok(PdCrossing::new(nums[0], nums[1], nums[2], nums[3], sign))
}

#[cfg(test)]
mod tests {
    use super::super::planar::{figure_eight_pd, trefoil_pd};
    use super::*;

    #[test]
    fn parse_mazur_skeleton() {
        let text = "\
# algebraic Mazur-type skeleton
component u dotted
component h framed -1 unknot
lk u h 1
";
        let d = Diagram::parse(text).unwrap();
        assert_eq!(d.components().len(), 2);
        assert_eq!(d.lk("u", "h"), BigInt::from(1));
        assert!(d.component("h").unwrap().unknot_certificate);
    }

    #[test]
    fn roundtrip_with_pd_and_meta() {
        let mut d = Diagram::new();
        d.add_component(Component::framed("k", 0).with_certificate()).unwrap();
        d.add_component(Component::dotted("u")).unwrap();
        d.set_lk("k", "u", BigInt::from(-3)).unwrap();
        d.set_three_handles(2);
        d.set_meta("status", "needs-figure-data");
        let mut p = PlanarData::new();
        p.insert_component("k", trefoil_pd());
        d.set_planar(Some(p));
        // trefoil has no crossings with u, so keep lk consistent by staleness
        d.mark_planar_stale();
        let text = d.serialize();
        let d2 = Diagram::parse(&text).unwrap();
        assert_eq!(d, d2);
        assert_eq!(d2.serialize(), text);
    }

    #[test]
    fn roundtrip_fresh_pd() {
        let mut d = Diagram::new();
        d.add_component(Component::framed("k", 0)).unwrap();
        let mut p = PlanarData::new();
        p.insert_component("k", figure_eight_pd());
        d.set_planar(Some(p));
        let text = d.serialize();
        let d2 = Diagram::parse(&text).unwrap();
        assert_eq!(d, d2);
    }

    #[test]
    fn linking_mismatch_reported() {
        let text = "\
component c1 framed 0
component c2 framed 0
lk c1 c2 5
pd c1 X(1,3,2,4,+)
pd c2 X(4,2,3,1,+)
";
        let err = Diagram::parse(text).unwrap_err();
        assert!(matches!(
            err,
            ParseError::Validation(DiagramError::LinkingMismatch(..))
        ));
    }

    #[test]
    fn unknown_component_in_lk() {
        let text = "component a framed 0\nlk a ghost 1\n";
        assert!(matches!(
            Diagram::parse(text),
            Err(ParseError::Diagram { .. })
        ));
    }

    #[test]
    fn duplicate_id_rejected() {
        let text = "component a framed 0\ncomponent a dotted\n";
        assert!(matches!(Diagram::parse(text), Err(ParseError::Diagram { .. })));
    }

    #[test]
    fn empty_input_rejected() {
        assert_eq!(Diagram::parse("  \n# only a comment\n"), Err(ParseError::Empty));
    }
}
