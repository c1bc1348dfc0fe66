//! HTTP/JSON service over formal contexts: dataset upload, lattice
//! queries and interactive probe sessions.
//!
//! Every mutating probe call returns the new layout together with the
//! delta from the previous revision. Clients may send `If-Match: <revision>`
//! to reject stale writes with 409.

mod api;
pub mod error;
pub mod store;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::Router;

use semprobe_core::lattice::DEFAULT_CONCEPT_LIMIT;

pub use error::ApiError;
pub use store::Store;

#[derive(Debug, Clone)]
pub struct Config {
    /// Where datasets and sessions are persisted. `None` keeps everything
    /// in memory.
    pub data_dir: Option<PathBuf>,
    pub max_objects: usize,
    pub max_attributes: usize,
    pub max_body_bytes: usize,
    pub concept_limit: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            data_dir: None,
            max_objects: 100_000,
            max_attributes: 100_000,
            max_body_bytes: 64 << 20,
            concept_limit: DEFAULT_CONCEPT_LIMIT,
        }
    }
}

pub type AppState = Arc<Store>;

/// Opens the store and builds the router.
pub fn app(config: Config) -> Result<Router, ApiError> {
    Ok(router(Arc::new(Store::open(config)?)))
}

pub fn router(state: AppState) -> Router {
    api::routes(state)
}

/// Serves until ctrl-c.
pub async fn serve(config: Config, addr: SocketAddr) -> std::io::Result<()> {
    let app = app(config).map_err(std::io::Error::other)?;
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
