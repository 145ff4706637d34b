use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Automorphism attached to a skew polynomial ring.
///
/// `Psi` cyclically shifts the `j` index of the CRT coordinates within each
/// `i` block, `Theta(t)` raises every CRT coordinate to the `p^t`-th power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Autom {
    Identity,
    Psi,
    Theta(u32),
}

impl fmt::Display for Autom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Autom::Identity => write!(f, "id"),
            Autom::Psi => write!(f, "psi"),
            Autom::Theta(t) => write!(f, "theta_{t}"),
        }
    }
}

// JSON form: "id" | "psi" | {"theta": t}
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AutomRepr {
    Name(String),
    Theta { theta: u32 },
}

impl Serialize for Autom {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = match self {
            Autom::Identity => AutomRepr::Name("id".into()),
            Autom::Psi => AutomRepr::Name("psi".into()),
            Autom::Theta(t) => AutomRepr::Theta { theta: *t },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Autom {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match AutomRepr::deserialize(deserializer)? {
            AutomRepr::Name(name) => match name.as_str() {
                "id" | "identity" => Ok(Autom::Identity),
                "psi" => Ok(Autom::Psi),
                other => Err(serde::de::Error::custom(format!(
                    "unknown automorphism {other:?}, expected \"id\", \"psi\" or {{\"theta\": t}}"
                ))),
            },
            AutomRepr::Theta { theta } => Ok(Autom::Theta(theta)),
        }
    }
}
