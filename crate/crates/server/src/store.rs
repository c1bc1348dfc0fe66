//! Datasets and probe sessions, with optional on-disk persistence.
//!
//! Layout of the data directory:
//!
//! ```text
//! datasets/<id>.cxt     canonical Burmeister file
//! sessions/<id>.json    loaded objects, weights and revision
//! ```
//!
//! Layouts are never written; they are recomputed from the probe state.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use serde::{Deserialize, Serialize};
use tracing::warn;

use semprobe_core::lattice::{build_aoc, concept_lattice, AocMode, AocPoset, ConceptLattice, LatticeError};
use semprobe_core::probe::{diff_layout, layout, GroupedContext, Layout, ProbeState, TransitionDelta, Weight};
use semprobe_core::FormalContext;

use crate::error::ApiError;
use crate::Config;

pub struct DatasetRecord {
    pub id: String,
    pub data: GroupedContext,
    lattice: OnceLock<Result<Arc<ConceptLattice>, LatticeError>>,
    aoc: OnceLock<Result<Arc<AocPoset>, LatticeError>>,
}

impl DatasetRecord {
    fn new(id: String, ctx: FormalContext) -> Self {
        DatasetRecord {
            id,
            data: GroupedContext::new(ctx),
            lattice: OnceLock::new(),
            aoc: OnceLock::new(),
        }
    }

    pub fn context(&self) -> &FormalContext {
        self.data.context()
    }

    /// Builds the lattice on first use. Blocking.
    pub fn lattice(&self, limit: usize) -> Result<Arc<ConceptLattice>, LatticeError> {
        self.lattice
            .get_or_init(|| concept_lattice(self.context(), limit).map(Arc::new))
            .clone()
    }

    pub fn aoc(&self, limit: usize) -> Result<(Arc<ConceptLattice>, Arc<AocPoset>), LatticeError> {
        let lattice = self.lattice(limit)?;
        let aoc = self
            .aoc
            .get_or_init(|| build_aoc(self.context(), &lattice, AocMode::default()).map(Arc::new))
            .clone()?;
        Ok((lattice, aoc))
    }
}

pub struct ProbeSession {
    pub id: String,
    pub dataset: Arc<DatasetRecord>,
    pub probe: ProbeState,
    pub revision: u64,
    pub layout: Layout,
}

#[derive(Debug, Serialize, Deserialize)]
struct StoredWeight {
    object: String,
    weight: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct StoredSession {
    id: String,
    dataset: String,
    revision: u64,
    objects: Vec<StoredWeight>,
}

pub struct Store {
    config: Config,
    datasets: RwLock<BTreeMap<String, Arc<DatasetRecord>>>,
    sessions: RwLock<BTreeMap<String, Arc<Mutex<ProbeSession>>>>,
    next_dataset: AtomicU64,
    next_session: AtomicU64,
}

fn io_error(path: &Path, e: std::io::Error) -> ApiError {
    ApiError::Internal(format!("{}: {e}", path.display()))
}

fn numeric_suffix(id: &str, prefix: char) -> Option<u64> {
    id.strip_prefix(prefix)?.parse().ok()
}

impl Store {
    /// Opens the store, restoring datasets and sessions from the data
    /// directory when one is configured.
    pub fn open(config: Config) -> Result<Store, ApiError> {
        let store = Store {
            config,
            datasets: RwLock::default(),
            sessions: RwLock::default(),
            next_dataset: AtomicU64::new(1),
            next_session: AtomicU64::new(1),
        };
        if let Some(dir) = store.config.data_dir.clone() {
            store.restore(&dir)?;
        }
        Ok(store)
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    fn dir(&self, sub: &str) -> Option<PathBuf> {
        self.config.data_dir.as_ref().map(|d| d.join(sub))
    }

    fn restore(&self, dir: &Path) -> Result<(), ApiError> {
        let ds_dir = dir.join("datasets");
        let ss_dir = dir.join("sessions");
        fs::create_dir_all(&ds_dir).map_err(|e| io_error(&ds_dir, e))?;
        fs::create_dir_all(&ss_dir).map_err(|e| io_error(&ss_dir, e))?;

        let mut max_ds = 0;
        for path in sorted_entries(&ds_dir, "cxt")? {
            let id = stem(&path);
            let text = fs::read_to_string(&path).map_err(|e| io_error(&path, e))?;
            match FormalContext::parse_cxt(&text) {
                Ok(ctx) => {
                    max_ds = max_ds.max(numeric_suffix(&id, 'd').unwrap_or(0));
                    self.datasets
                        .write()
                        .unwrap()
                        .insert(id.clone(), Arc::new(DatasetRecord::new(id, ctx)));
                }
                Err(e) => warn!("skipping dataset {}: {e}", path.display()),
            }
        }
        self.next_dataset.store(max_ds + 1, Ordering::SeqCst);

        let mut max_ss = 0;
        for path in sorted_entries(&ss_dir, "json")? {
            match self.load_session(&path) {
                Ok(session) => {
                    max_ss = max_ss.max(numeric_suffix(&session.id, 's').unwrap_or(0));
                    self.sessions
                        .write()
                        .unwrap()
                        .insert(session.id.clone(), Arc::new(Mutex::new(session)));
                }
                Err(reason) => warn!("skipping session {}: {reason}", path.display()),
            }
        }
        self.next_session.store(max_ss + 1, Ordering::SeqCst);
        Ok(())
    }

    fn load_session(&self, path: &Path) -> Result<ProbeSession, String> {
        let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
        let stored: StoredSession = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let dataset = self
            .dataset(&stored.dataset)
            .map_err(|_| format!("dataset {} is missing", stored.dataset))?;
        let ctx = dataset.context();
        let mut probe = ProbeState::new(ctx);
        for w in &stored.objects {
            let weight: Weight = w
                .weight
                .parse()
                .map_err(|e: semprobe_core::probe::ProbeError| e.to_string())?;
            probe.add_named(ctx, &w.object).map_err(|e| e.to_string())?;
            probe
                .set_named_weight(ctx, &w.object, weight)
                .map_err(|e| e.to_string())?;
        }
        let layout = layout(&dataset.data, &probe);
        Ok(ProbeSession {
            id: stored.id,
            dataset,
            probe,
            revision: stored.revision,
            layout,
        })
    }

    fn persist_session(&self, session: &ProbeSession) -> Result<(), ApiError> {
        let Some(dir) = self.dir("sessions") else {
            return Ok(());
        };
        let ctx = session.dataset.context();
        let stored = StoredSession {
            id: session.id.clone(),
            dataset: session.dataset.id.clone(),
            revision: session.revision,
            objects: session
                .probe
                .weights()
                .iter()
                .map(|(&g, w)| StoredWeight {
                    object: ctx.objects()[g].clone(),
                    weight: w.to_string(),
                })
                .collect(),
        };
        let path = dir.join(format!("{}.json", session.id));
        let text = serde_json::to_string_pretty(&stored).map_err(|e| ApiError::Internal(e.to_string()))?;
        write_atomic(&path, &text)
    }

    pub fn dataset(&self, id: &str) -> Result<Arc<DatasetRecord>, ApiError> {
        self.datasets
            .read()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::NotFound(format!("unknown dataset {id:?}")))
    }

    pub fn add_dataset(&self, ctx: FormalContext) -> Result<Arc<DatasetRecord>, ApiError> {
        if ctx.num_objects() > self.config.max_objects || ctx.num_attributes() > self.config.max_attributes {
            return Err(ApiError::TooLarge(format!(
                "context is {}x{}, limit is {}x{}",
                ctx.num_objects(),
                ctx.num_attributes(),
                self.config.max_objects,
                self.config.max_attributes
            )));
        }
        let id = format!("d{}", self.next_dataset.fetch_add(1, Ordering::SeqCst));
        if let Some(dir) = self.dir("datasets") {
            write_atomic(&dir.join(format!("{id}.cxt")), &ctx.write_cxt())?;
        }
        let record = Arc::new(DatasetRecord::new(id.clone(), ctx));
        self.datasets.write().unwrap().insert(id, record.clone());
        Ok(record)
    }

    pub fn create_session(&self, dataset: Arc<DatasetRecord>) -> Result<Arc<Mutex<ProbeSession>>, ApiError> {
        let id = format!("s{}", self.next_session.fetch_add(1, Ordering::SeqCst));
        let probe = ProbeState::new(dataset.context());
        let layout = layout(&dataset.data, &probe);
        let session = ProbeSession {
            id: id.clone(),
            dataset,
            probe,
            revision: 0,
            layout,
        };
        self.persist_session(&session)?;
        let handle = Arc::new(Mutex::new(session));
        self.sessions.write().unwrap().insert(id, handle.clone());
        Ok(handle)
    }

    pub fn session(&self, id: &str) -> Result<Arc<Mutex<ProbeSession>>, ApiError> {
        self.sessions
            .read()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::NotFound(format!("unknown session {id:?}")))
    }

    /// Applies `change` to a copy of the probe. On success the session moves
    /// to the next revision and the layout delta is returned. A stale
    /// `expected` revision is rejected before anything is applied.
    pub fn mutate<F>(
        &self,
        id: &str,
        expected: Option<u64>,
        change: F,
    ) -> Result<(u64, Layout, TransitionDelta, Arc<DatasetRecord>), ApiError>
    where
        F: FnOnce(&GroupedContext, &mut ProbeState) -> Result<(), ApiError>,
    {
        let handle = self.session(id)?;
        let mut session = handle.lock().unwrap();
        if let Some(expected) = expected {
            if expected != session.revision {
                return Err(ApiError::Conflict {
                    expected,
                    current: session.revision,
                });
            }
        }
        let dataset = session.dataset.clone();
        let mut probe = session.probe.clone();
        change(&dataset.data, &mut probe)?;
        let next = layout(&dataset.data, &probe);
        let delta = diff_layout(&session.layout, &next);
        let staged = ProbeSession {
            id: session.id.clone(),
            dataset: dataset.clone(),
            probe,
            revision: session.revision + 1,
            layout: next,
        };
        self.persist_session(&staged)?;
        *session = staged;
        Ok((session.revision, session.layout.clone(), delta, dataset))
    }
}

fn sorted_entries(dir: &Path, ext: &str) -> Result<Vec<PathBuf>, ApiError> {
    let mut out: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| io_error(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().and_then(|x| x.to_str()) == Some(ext))
        .collect();
    out.sort();
    Ok(out)
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or_default()
        .to_string()
}

fn write_atomic(path: &Path, text: &str) -> Result<(), ApiError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text).map_err(|e| io_error(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| io_error(path, e))
}
