use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use uuid::Uuid;

use crate::session::{Session, SessionError};

/// Default idle time before a session is dropped.
pub const DEFAULT_IDLE: Duration = Duration::from_secs(60 * 60);

struct Entry {
    session: Arc<Mutex<Session>>,
    last_used: Instant,
}

/// In-memory sessions keyed by id. Each session has its own lock, so
/// requests on one session are serialized while distinct sessions proceed
/// independently.
pub struct SessionStore {
    sessions: Mutex<HashMap<String, Entry>>,
    idle: Duration,
}

impl SessionStore {
    pub fn new(idle: Duration) -> Self {
        SessionStore {
            sessions: Mutex::new(HashMap::new()),
            idle,
        }
    }

    pub fn insert(&self, session: Session) -> String {
        let id = Uuid::new_v4().to_string();
        let mut map = self.sessions.lock().expect("store lock");
        map.insert(
            id.clone(),
            Entry {
                session: Arc::new(Mutex::new(session)),
                last_used: Instant::now(),
            },
        );
        id
    }

    /// Looks up a live session and marks it used.
    pub fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, SessionError> {
        let now = Instant::now();
        let mut map = self.sessions.lock().expect("store lock");
        let idle = self.idle;
        map.retain(|_, e| now.duration_since(e.last_used) < idle);
        let entry = map
            .get_mut(id)
            .ok_or_else(|| SessionError::UnknownSession(id.to_string()))?;
        entry.last_used = now;
        Ok(entry.session.clone())
    }

    /// Drops idle sessions; returns how many were removed.
    pub fn expire(&self) -> usize {
        let now = Instant::now();
        let mut map = self.sessions.lock().expect("store lock");
        let before = map.len();
        map.retain(|_, e| now.duration_since(e.last_used) < self.idle);
        before - map.len()
    }

    pub fn len(&self) -> usize {
        self.sessions.lock().expect("store lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn idle(&self) -> Duration {
        self.idle
    }
}

impl Default for SessionStore {
    fn default() -> Self {
        SessionStore::new(DEFAULT_IDLE)
    }
}
