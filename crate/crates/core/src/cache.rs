//! Persistent memo of layer polynomials.

use std::collections::BTreeMap;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::context::{Context, LayerKey, PolyMap};
use crate::error::{Error, Result};
use crate::hall::compute_layer_poly;
use crate::poly::IntPoly;
use crate::roots::Partition;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheTerm {
    pub partition: BTreeMap<String, u32>,
    pub poly: IntPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub lambda: BTreeMap<String, u32>,
    /// 1-based vertex label.
    pub vertex: usize,
    pub e: u32,
    pub value: Vec<CacheTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub format_version: u32,
    pub quiver_fingerprint: String,
    pub layers: Vec<CacheEntry>,
}

impl CacheFile {
    pub fn from_context(ctx: &Context) -> Self {
        let layers = ctx
            .layer_entries()
            .into_iter()
            .map(|(k, v)| CacheEntry {
                lambda: k.lambda.to_json_map(),
                vertex: k.vertex + 1,
                e: k.e,
                value: v.into_iter().map(|(p, poly)| CacheTerm { partition: p.to_json_map(), poly }).collect(),
            })
            .collect();
        CacheFile { format_version: FORMAT_VERSION, quiver_fingerprint: ctx.quiver().fingerprint(), layers }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("cache file is not valid JSON: {e}")))?;
        match raw.get("format_version").and_then(|v| v.as_u64()) {
            Some(v) if v == FORMAT_VERSION as u64 => {}
            Some(v) => {
                return Err(Error::invalid(format!(
                    "cache file has format version {v}, expected {FORMAT_VERSION}; delete it or run `cache clear`"
                )))
            }
            None => return Err(Error::invalid("cache file has no format_version")),
        }
        serde_json::from_value(raw).map_err(|e| Error::invalid(format!("cache file is malformed: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| match e {
            Error::InvalidInput(m) => Error::invalid(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn store(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).expect("serializable");
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, text)?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn entries(&self, ctx: &Context) -> Result<Vec<(LayerKey, PolyMap)>> {
        if self.quiver_fingerprint != ctx.quiver().fingerprint() {
            return Err(Error::invalid(format!(
                "cache belongs to quiver `{}`, not `{}`",
                self.quiver_fingerprint,
                ctx.quiver().fingerprint()
            )));
        }
        let n = ctx.nroots();
        self.layers
            .iter()
            .map(|e| {
                if e.vertex == 0 || e.vertex > ctx.quiver().vertex_count() {
                    return Err(Error::invalid(format!("cache entry has vertex {}", e.vertex)));
                }
                let key = LayerKey { lambda: Partition::from_json_map(&e.lambda, n)?, vertex: e.vertex - 1, e: e.e };
                let value = e
                    .value
                    .iter()
                    .map(|t| Ok((Partition::from_json_map(&t.partition, n)?, t.poly.clone())))
                    .collect::<Result<PolyMap>>()?;
                Ok((key, value))
            })
            .collect()
    }

    /// Seed the context's layer table.
    pub fn apply(&self, ctx: &Context) -> Result<usize> {
        let entries = self.entries(ctx)?;
        let count = entries.len();
        for (k, v) in entries {
            ctx.insert_layer(k, v);
        }
        Ok(count)
    }

    /// Recompute up to `count` randomly chosen entries and compare.
    pub fn verify<R: Rng>(&self, ctx: &Context, count: usize, rng: &mut R) -> Result<usize> {
        let entries = self.entries(ctx)?;
        let picked: Vec<&(LayerKey, PolyMap)> = entries.choose_multiple(rng, count).collect();
        for (k, v) in &picked {
            let fresh = compute_layer_poly(ctx, &k.lambda, k.vertex, k.e)?;
            if &fresh != v {
                return Err(Error::verify(format!(
                    "cached layer for {} at vertex {} with e={} differs from recomputation",
                    k.lambda.to_json_string(),
                    k.vertex + 1,
                    k.e
                )));
            }
        }
        Ok(picked.len())
    }
}
