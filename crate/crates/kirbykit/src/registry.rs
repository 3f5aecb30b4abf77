//! Named diagram templates.
//!
//! Two kinds of entries ship with the toolkit: `complete` templates whose
//! crossing data is fully known (the cusp, the twist-knot family), and
//! `needs-figure-data` skeletons that record handle counts, framings and
//! certificates only. The skeletons never fabricate crossing data; their
//! open geometric hypotheses are recorded as metadata. The environment
//! variable `KIRBYKIT_REGISTRY` points at a directory of `.kkd` files that
//! override or extend the shipped entries.

use std::path::PathBuf;

use thiserror::Error;

use crate::linkdiagram::{twist_knot, Diagram, ParseError};

pub const REGISTRY_ENV: &str = "KIRBYKIT_REGISTRY";

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("unknown registry entry {0:?}")]
    Unknown(String),
    #[error("bad twist-knot index in {0:?}")]
    BadTwistIndex(String),
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("failed to parse {path}: {source}")]
    Parse {
        path: String,
        source: ParseError,
    },
}

/// Shipped template names, in listing order.
pub fn builtin_names() -> Vec<&'static str> {
    vec![
        "W-template",
        "S-template",
        "H-cobordism-template",
        "cusp",
        "twist-knot:<n>",
    ]
}

fn w_template() -> Diagram {
    Diagram::parse(
        "\
# contractible handlebody skeleton: one 1-handle, one -1-framed 2-handle,
# algebraic Mazur pattern (crossing data not included)
component u dotted
component h framed -1
lk u h 1
meta status needs-figure-data
meta note attaching-curve crossing data is user-completable
",
    )
    .expect("builtin template parses")
}

fn h_cobordism_template() -> Diagram {
    Diagram::parse(
        "\
# cobordism piece: three 2-handles at framings -1, -1, 0 and one 3-handle
component a framed -1
component b framed -1
component c framed 0
threehandles 1
meta status needs-figure-data
meta note linking data among a, b, c is user-completable
",
    )
    .expect("builtin template parses")
}

fn s_template() -> Diagram {
    Diagram::parse(
        "\
# W extended by the cobordism H
component u dotted
component h framed -1
component a framed -1
component b framed -1
component c framed 0
lk u h 1
threehandles 1
meta status needs-figure-data
meta note boundary is expected to fiber over the circle with monodromy [[-1,-2],[1,1]]
meta hypothesis delta loop unknotted in the boundary (caller-supplied certificate)
",
    )
    .expect("builtin template parses")
}

/// The cusp neighborhood: 0-framed trefoil with full planar data.
fn cusp() -> Diagram {
    let d = Diagram::parse(
        "\
component k framed 0
pd k X(1,4,2,5,+) X(3,6,4,1,+) X(5,2,6,3,+)
meta status complete
meta note 0-framed positive trefoil; boundary is 0-surgery on the trefoil
",
    )
    .expect("builtin template parses");
    d.validate().expect("cusp validates");
    d
}

/// Look up a template by name. `twist-knot:<n>` is parameterized.
pub fn lookup(name: &str) -> Result<Diagram, RegistryError> {
    if let Some(dir) = std::env::var_os(REGISTRY_ENV) {
        let mut path = PathBuf::from(dir);
        path.push(format!("{name}.kkd"));
        if path.exists() {
            let text = std::fs::read_to_string(&path).map_err(|source| RegistryError::Io {
                path: path.display().to_string(),
                source,
            })?;
            return Diagram::parse(&text).map_err(|source| RegistryError::Parse {
                path: path.display().to_string(),
                source,
            });
        }
    }
    if let Some(nstr) = name.strip_prefix("twist-knot:") {
        let n: i64 = nstr
            .parse()
            .map_err(|_| RegistryError::BadTwistIndex(name.to_string()))?;
        return twist_knot(n).map_err(|_| RegistryError::BadTwistIndex(name.to_string()));
    }
    match name {
        "W-template" => Ok(w_template()),
        "S-template" => Ok(s_template()),
        "H-cobordism-template" => Ok(h_cobordism_template()),
        "cusp" => Ok(cusp()),
        other => Err(RegistryError::Unknown(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants;

    #[test]
    fn all_builtins_parse_and_validate() {
        for name in ["W-template", "S-template", "H-cobordism-template", "cusp"] {
            let d = lookup(name).unwrap();
            d.validate().unwrap();
        }
        lookup("twist-knot:3").unwrap().validate().unwrap();
    }

    #[test]
    fn w_template_is_homology_ball() {
        let d = lookup("W-template").unwrap();
        assert!(invariants::is_homology_ball(&d));
        assert_eq!(invariants::euler_characteristic(&d), 1);
    }

    #[test]
    fn cusp_boundary_homology() {
        let d = lookup("cusp").unwrap();
        assert_eq!(
            invariants::h1_boundary(&d),
            crate::intalg::AbelianGroup::free(1)
        );
    }

    #[test]
    fn unknown_entry() {
        assert!(matches!(lookup("nonsense"), Err(RegistryError::Unknown(_))));
        assert!(matches!(
            lookup("twist-knot:zero"),
            Err(RegistryError::BadTwistIndex(_))
        ));
    }
}
