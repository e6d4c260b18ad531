//! Shared read-only data for one quiver plus write-once memo tables.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::field::PRIMES;
use crate::poly::IntPoly;
use crate::quiver::Quiver;
use crate::rep::{all_indecomposables, HomData, Identifier, Rep};
use crate::roots::{Partition, RootSystem, TightForm};

pub type PolyMap = BTreeMap<Partition, IntPoly>;
pub type Census = BTreeMap<(Partition, Partition), IntPoly>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// How many of the built-in primes interpolation may use.
    pub primes: usize,
    /// Largest `ℓ(λ)` accepted by the general Hall polynomial search.
    pub max_length: u32,
    /// Largest number of candidate words scanned when enumerating fibres.
    pub word_cap: u64,
    /// Subspaces enumerated (summed over primes) before a layer with `e ≥ 2`
    /// is assembled from `e = 1` layers instead.
    pub enum_budget: u128,
}

impl Default for Config {
    fn default() -> Self {
        Config { primes: PRIMES.len(), max_length: 6, word_cap: 1_000_000, enum_budget: 2_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LayerKey {
    pub lambda: Partition,
    pub vertex: usize,
    pub e: u32,
}

pub struct Context {
    quiver: Quiver,
    roots: RootSystem,
    hom: HomData,
    config: Config,
    partitions: RwLock<HashMap<Vec<u32>, Arc<Vec<Partition>>>>,
    indecomposables: RwLock<HashMap<u32, Arc<Vec<Rep>>>>,
    identifiers: RwLock<HashMap<Vec<u32>, Arc<Identifier>>>,
    pub(crate) layers: RwLock<HashMap<LayerKey, Arc<PolyMap>>>,
    pub(crate) census: RwLock<HashMap<(Partition, Vec<u32>), Arc<Census>>>,
    pub(crate) stars: RwLock<HashMap<(usize, Partition), Partition>>,
    pub(crate) gammas: RwLock<HashMap<TightForm, Arc<PolyMap>>>,
}

impl std::fmt::Debug for Context {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Context").field("quiver", &self.quiver).field("config", &self.config).finish()
    }
}

pub(crate) fn memo<K, V, F>(table: &RwLock<HashMap<K, V>>, key: &K, compute: F) -> Result<V>
where
    K: Eq + Hash + Clone,
    V: Clone,
    F: FnOnce() -> Result<V>,
{
    if let Some(v) = table.read().unwrap().get(key) {
        return Ok(v.clone());
    }
    let v = compute()?;
    Ok(table.write().unwrap().entry(key.clone()).or_insert(v).clone())
}

impl Context {
    /// Validates the quiver and computes its Hom data.
    pub fn new(quiver: Quiver, config: Config) -> Result<Self> {
        let diag = quiver.validate_dynkin();
        if !diag.accepted {
            return Err(Error::invalid(format!("not a Dynkin quiver: {}", diag.problems.join("; "))));
        }
        if config.primes == 0 || config.primes > PRIMES.len() {
            return Err(Error::invalid(format!("--primes must lie in 1..={}", PRIMES.len())));
        }
        let roots = RootSystem::new(&quiver);
        let hom = HomData::compute(&quiver, &roots)?;
        Ok(Context {
            quiver,
            roots,
            hom,
            config,
            partitions: Default::default(),
            indecomposables: Default::default(),
            identifiers: Default::default(),
            layers: Default::default(),
            census: Default::default(),
            stars: Default::default(),
            gammas: Default::default(),
        })
    }

    pub fn with_defaults(quiver: Quiver) -> Result<Self> {
        Self::new(quiver, Config::default())
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn hom(&self) -> &HomData {
        &self.hom
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn nroots(&self) -> usize {
        self.roots.len()
    }

    pub fn primes(&self) -> &'static [u32] {
        &PRIMES[..self.config.primes]
    }

    /// The first `k` usable primes, or `CapExceeded`.
    pub fn take_primes(&self, k: usize) -> Result<&'static [u32]> {
        if k > self.config.primes {
            return Err(Error::cap(format!(
                "interpolation needs {k} primes but only {} are enabled",
                self.config.primes
            )));
        }
        Ok(&PRIMES[..k])
    }

    pub fn check_dimvec(&self, d: &[u32]) -> Result<()> {
        if d.len() != self.quiver.vertex_count() {
            return Err(Error::invalid(format!(
                "dimension vector has {} entries, the quiver has {} vertices",
                d.len(),
                self.quiver.vertex_count()
            )));
        }
        Ok(())
    }

    pub fn check_partition(&self, lambda: &Partition) -> Result<()> {
        if lambda.mults().len() != self.nroots() {
            return Err(Error::invalid("partition does not match the root system"));
        }
        Ok(())
    }

    /// `Λ_d`, sorted.
    pub fn partitions(&self, d: &[u32]) -> Arc<Vec<Partition>> {
        memo(&self.partitions, &d.to_vec(), || Ok(Arc::new(self.roots.partitions(d)))).unwrap()
    }

    pub fn indecomposables(&self, p: u32) -> Result<Arc<Vec<Rep>>> {
        memo(&self.indecomposables, &p, || Ok(Arc::new(all_indecomposables(&self.quiver, &self.roots, p)?)))
    }

    pub fn identifier(&self, d: &[u32]) -> Arc<Identifier> {
        memo(&self.identifiers, &d.to_vec(), || Ok(Arc::new(Identifier::new(&self.hom, self.partitions(d).to_vec()))))
            .unwrap()
    }

    pub fn dimvec(&self, lambda: &Partition) -> Vec<u32> {
        self.roots.dimvec(lambda)
    }

    pub fn display(&self, lambda: &Partition) -> String {
        self.roots.display(lambda)
    }

    /// Memoized layer polynomials, for persistence.
    pub fn layer_entries(&self) -> BTreeMap<LayerKey, PolyMap> {
        self.layers.read().unwrap().iter().map(|(k, v)| (k.clone(), (**v).clone())).collect()
    }

    /// Seed the layer table, e.g. from a cache file.
    pub fn insert_layer(&self, key: LayerKey, value: PolyMap) {
        self.layers.write().unwrap().insert(key, Arc::new(value));
    }

    pub fn clear_caches(&self) {
        self.layers.write().unwrap().clear();
        self.census.write().unwrap().clear();
        self.stars.write().unwrap().clear();
        self.gammas.write().unwrap().clear();
    }
}
