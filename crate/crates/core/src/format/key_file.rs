use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};

use super::{parse_graph, public_value, FormatError, FORMAT_VERSION};
use crate::graph::Graph;
use crate::keygen::{
    GcKeyPair, GcPublic, GcSgipKeyPair, GcSgipPublic, GhKeyPair, GhPublic, KeyPair, KeyParams,
    PublicKey, SgipKeyPair, SgipPublic,
};
use crate::protocol::ProtocolKind;

#[derive(Clone, Debug, PartialEq)]
pub enum KeyBody {
    Full(KeyPair),
    Public(PublicKey),
}

/// A parsed key file, either a full key pair or a public-only export.
#[derive(Clone, Debug, PartialEq)]
pub struct KeyDocument {
    pub params: KeyParams,
    /// Present only in full key files: the seed regenerates the private part.
    pub seed: Option<u64>,
    pub body: KeyBody,
}

impl KeyDocument {
    pub fn kind(&self) -> ProtocolKind {
        self.params.kind()
    }

    pub fn public(&self) -> PublicKey {
        match &self.body {
            KeyBody::Full(k) => k.public(),
            KeyBody::Public(p) => p.clone(),
        }
    }

    pub fn key_pair(&self) -> Option<&KeyPair> {
        match &self.body {
            KeyBody::Full(k) => Some(k),
            KeyBody::Public(_) => None,
        }
    }
}

fn private_value(key: &KeyPair) -> Value {
    match key {
        KeyPair::Gh(k) => json!({ "maps": { "alpha": k.alpha } }),
        KeyPair::Sgip(k) => json!({
            "maps": { "alpha": k.alpha },
            "subgraphs": { "g1": k.g1 },
        }),
        KeyPair::Gc(k) => json!({ "coloring": k.coloring }),
        KeyPair::GcSgip(k) => json!({
            "subgraphs": { "g1": k.g1 },
            "coloring": k.coloring,
        }),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

/// Full key file: kind, params, seed, public and private sections.
pub fn write_key(key: &KeyPair, params: &KeyParams, seed: u64) -> String {
    pretty(&json!({
        "format_version": FORMAT_VERSION,
        "kind": key.kind(),
        "params": params,
        "seed": seed,
        "public": public_value(&key.public()),
        "private": private_value(key),
    }))
}

/// Public-only export: no private section and no seed.
pub fn write_public_key(public: &PublicKey, params: &KeyParams) -> String {
    pretty(&json!({
        "format_version": FORMAT_VERSION,
        "kind": public.kind(),
        "params": params,
        "public": public_value(public),
    }))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, FormatError> {
    v.as_object()
        .ok_or_else(|| FormatError::new(path, "expected an object"))
}

fn only_keys(obj: &Map<String, Value>, path: &str, allowed: &[&str]) -> Result<(), FormatError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(FormatError::new(join(path, k), "unknown field")),
        None => Ok(()),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value, FormatError> {
    obj.get(key)
        .ok_or_else(|| FormatError::new(join(path, key), "missing field"))
}

fn typed<T: DeserializeOwned>(v: &Value, path: &str) -> Result<T, FormatError> {
    T::deserialize(v).map_err(|e| FormatError::new(path, e))
}

fn graph(graphs: &Map<String, Value>, name: &str) -> Result<Graph, FormatError> {
    let path = join("public.graphs", name);
    let text = field(graphs, "public.graphs", name)?
        .as_str()
        .ok_or_else(|| FormatError::new(&path, "expected graph text"))?;
    parse_graph(text).map_err(|e| FormatError::new(path, e))
}

fn parse_public(kind: ProtocolKind, v: &Value) -> Result<PublicKey, FormatError> {
    let obj = object(v, "public")?;
    let graphs = object(field(obj, "public", "graphs")?, "public.graphs")?;
    let names: &[&str] = match kind {
        ProtocolKind::Gh => &["g1", "g2"],
        ProtocolKind::Sgip => &["omega", "g2"],
        ProtocolKind::Gc | ProtocolKind::GcSgip => &["gamma"],
    };
    only_keys(graphs, "public.graphs", names)?;
    let scalars: &[&str] = match kind {
        ProtocolKind::Gh | ProtocolKind::Sgip => &["graphs"],
        ProtocolKind::Gc => &["graphs", "k"],
        ProtocolKind::GcSgip => &["graphs", "k", "n"],
    };
    only_keys(obj, "public", scalars)?;
    let k = || typed(field(obj, "public", "k")?, "public.k");
    Ok(match kind {
        ProtocolKind::Gh => PublicKey::Gh(GhPublic {
            g1: graph(graphs, "g1")?,
            g2: graph(graphs, "g2")?,
        }),
        ProtocolKind::Sgip => PublicKey::Sgip(SgipPublic {
            omega: graph(graphs, "omega")?,
            g2: graph(graphs, "g2")?,
        }),
        ProtocolKind::Gc => PublicKey::Gc(GcPublic {
            gamma: graph(graphs, "gamma")?,
            k: k()?,
        }),
        ProtocolKind::GcSgip => PublicKey::GcSgip(GcSgipPublic {
            gamma: graph(graphs, "gamma")?,
            n: typed(field(obj, "public", "n")?, "public.n")?,
            k: k()?,
        }),
    })
}

fn parse_private(public: PublicKey, v: &Value) -> Result<KeyPair, FormatError> {
    let obj = object(v, "private")?;
    let nested = |group: &str, name: &str| -> Result<&Value, FormatError> {
        let path = join("private", group);
        let inner = object(field(obj, "private", group)?, &path)?;
        field(inner, &path, name)
    };
    let key = match public {
        PublicKey::Gh(public) => {
            only_keys(obj, "private", &["maps"])?;
            KeyPair::Gh(GhKeyPair {
                public,
                alpha: typed(nested("maps", "alpha")?, "private.maps.alpha")?,
            })
        }
        PublicKey::Sgip(public) => {
            only_keys(obj, "private", &["maps", "subgraphs"])?;
            KeyPair::Sgip(SgipKeyPair {
                public,
                g1: typed(nested("subgraphs", "g1")?, "private.subgraphs.g1")?,
                alpha: typed(nested("maps", "alpha")?, "private.maps.alpha")?,
            })
        }
        PublicKey::Gc(public) => {
            only_keys(obj, "private", &["coloring"])?;
            KeyPair::Gc(GcKeyPair {
                public,
                coloring: typed(field(obj, "private", "coloring")?, "private.coloring")?,
            })
        }
        PublicKey::GcSgip(public) => {
            only_keys(obj, "private", &["subgraphs", "coloring"])?;
            KeyPair::GcSgip(GcSgipKeyPair {
                public,
                g1: typed(nested("subgraphs", "g1")?, "private.subgraphs.g1")?,
                coloring: typed(field(obj, "private", "coloring")?, "private.coloring")?,
            })
        }
    };
    key.validate().map_err(|e| FormatError::new("private", e))?;
    Ok(key)
}

/// Parses a full or public-only key file. Full keys are validated against
/// their public part.
pub fn read_key(text: &str) -> Result<KeyDocument, FormatError> {
    let root: Value = serde_json::from_str(text).map_err(|e| FormatError::new("$", e))?;
    let obj = object(&root, "$")?;
    only_keys(
        obj,
        "",
        &["format_version", "kind", "params", "seed", "public", "private"],
    )?;
    let version: u32 = typed(field(obj, "", "format_version")?, "format_version")?;
    if version != FORMAT_VERSION {
        return Err(FormatError::new(
            "format_version",
            format!("unsupported version {version}"),
        ));
    }
    let kind_text: String = typed(field(obj, "", "kind")?, "kind")?;
    let kind: ProtocolKind = kind_text
        .parse()
        .map_err(|e: String| FormatError::new("kind", e))?;
    let params = KeyParams::from_json(kind, field(obj, "", "params")?.clone())
        .map_err(|e| FormatError::new("params", e))?;
    let seed = obj.get("seed").map(|v| typed(v, "seed")).transpose()?;
    let public = parse_public(kind, field(obj, "", "public")?)?;
    let body = match obj.get("private") {
        Some(v) => KeyBody::Full(parse_private(public, v)?),
        None => {
            if seed.is_some() {
                return Err(FormatError::new("seed", "public-only key files carry no seed"));
            }
            KeyBody::Public(public)
        }
    };
    Ok(KeyDocument { params, seed, body })
}
