//! HTTP play service: a human plays the grabbing game against the perfect
//! engine, one in-memory session per game.

pub mod api;
pub mod session;
pub mod store;

use std::net::SocketAddr;
use std::sync::Arc;
use std::time::Duration;

pub use api::{router, ApiError, CreateRequest, CreateResponse, EngineMoveResponse, ErrorBody};
pub use session::{EngineRole, EvalView, Player, Ply, Scores, Session, SessionError, View};
pub use store::{SessionStore, DEFAULT_IDLE};

/// Serves the API on `addr` until Ctrl-C, expiring sessions idle for longer
/// than `idle`.
pub async fn serve(addr: SocketAddr, idle: Duration) -> std::io::Result<()> {
    let store = Arc::new(SessionStore::new(idle));
    let sweeper = {
        let store = store.clone();
        tokio::spawn(async move {
            let period = (idle / 4).max(Duration::from_secs(1));
            loop {
                tokio::time::sleep(period).await;
                store.expire();
            }
        })
    };
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    let result = axum::serve(listener, router(store))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await;
    sweeper.abort();
    result
}
