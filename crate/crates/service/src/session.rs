use std::sync::Arc;

use grabbing_core::{
    format_scaled, legal_moves, InstanceDocument, InstanceError, MoveEval, Solver, VertexSet,
    WeightedGraph,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Alice,
    Bob,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Alice => Player::Bob,
            Player::Bob => Player::Alice,
        }
    }
}

/// Which side the engine plays, if any.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineRole {
    Alice,
    Bob,
    #[default]
    None,
}

impl EngineRole {
    fn plays(self, p: Player) -> bool {
        matches!(
            (self, p),
            (EngineRole::Alice, Player::Alice) | (EngineRole::Bob, Player::Bob)
        )
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SessionError {
    #[error("{0}")]
    Instance(String),
    #[error("the instance graph is not connected")]
    Disconnected,
    #[error("vertex {0} is not a legal move")]
    IllegalMove(usize),
    #[error("it is {0:?}'s turn")]
    WrongTurn(Player),
    #[error("the engine does not play {0:?}")]
    NotEngineTurn(Player),
    #[error("the game is over")]
    Finished,
    #[error("nothing to undo")]
    EmptyHistory,
    #[error("unknown session {0}")]
    UnknownSession(String),
}

impl From<InstanceError> for SessionError {
    fn from(e: InstanceError) -> Self {
        SessionError::Instance(e.to_string())
    }
}

impl SessionError {
    /// Stable machine-readable code for the wire.
    pub fn code(&self) -> &'static str {
        match self {
            SessionError::Instance(_) => "invalid_instance",
            SessionError::Disconnected => "disconnected_instance",
            SessionError::IllegalMove(_) => "illegal_move",
            SessionError::WrongTurn(_) => "wrong_turn",
            SessionError::NotEngineTurn(_) => "not_engine_turn",
            SessionError::Finished => "finished",
            SessionError::EmptyHistory => "empty_history",
            SessionError::UnknownSession(_) => "unknown_session",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ply {
    pub vertex: usize,
    pub mover: Player,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scores {
    pub alice: String,
    pub bob: String,
}

/// Everything a client needs to draw the position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct View {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub weights: Vec<String>,
    pub remaining: Vec<usize>,
    pub history: Vec<Ply>,
    pub scores: Scores,
    /// `None` once the game is over.
    pub turn: Option<Player>,
    pub legal_moves: Vec<usize>,
    pub finished: bool,
    /// "Alice wins" or "Bob wins" once finished.
    pub verdict: Option<String>,
    pub engine_role: EngineRole,
}

/// One candidate move for the side to move, in input units.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EvalView {
    pub vertex: usize,
    /// Mover's best final margin after grabbing `vertex`.
    pub value_after: String,
    pub optimal: bool,
}

/// A game in progress against (or without) the engine.
#[derive(Debug, Clone)]
pub struct Session {
    solver: Solver,
    engine: EngineRole,
    remaining: VertexSet,
    history: Vec<Ply>,
    /// Scaled integer totals.
    alice: u64,
    bob: u64,
}

impl Session {
    pub fn new(doc: &InstanceDocument, engine: EngineRole) -> Result<Session, SessionError> {
        let graph = doc.to_graph()?;
        Session::from_graph(Arc::new(graph), engine)
    }

    /// Starts from a shared graph, so sessions on one graph reuse it.
    pub fn from_graph(
        graph: Arc<WeightedGraph>,
        engine: EngineRole,
    ) -> Result<Session, SessionError> {
        if graph.order() == 0 || !graph.is_connected() {
            return Err(SessionError::Disconnected);
        }
        let remaining = graph.vertices();
        Ok(Session {
            solver: Solver::new(graph),
            engine,
            remaining,
            history: Vec::new(),
            alice: 0,
            bob: 0,
        })
    }

    /// Rebuilds a session by replaying `history` from the start.
    pub fn replay(
        graph: Arc<WeightedGraph>,
        engine: EngineRole,
        history: &[Ply],
    ) -> Result<Session, SessionError> {
        let mut s = Session::from_graph(graph, engine)?;
        for ply in history {
            if s.turn() != Some(ply.mover) {
                return Err(SessionError::WrongTurn(s.turn().unwrap_or(ply.mover)));
            }
            s.apply(ply.vertex)?;
        }
        Ok(s)
    }

    pub fn graph(&self) -> &WeightedGraph {
        self.solver.graph()
    }

    pub fn history(&self) -> &[Ply] {
        &self.history
    }

    pub fn engine_role(&self) -> EngineRole {
        self.engine
    }

    pub fn is_finished(&self) -> bool {
        self.remaining.is_empty()
    }

    pub fn turn(&self) -> Option<Player> {
        if self.is_finished() {
            None
        } else if self.history.len() % 2 == 0 {
            Some(Player::Alice)
        } else {
            Some(Player::Bob)
        }
    }

    /// Raw totals in scaled units.
    pub fn totals(&self) -> (u64, u64) {
        (self.alice, self.bob)
    }

    pub fn human_move(&mut self, vertex: usize) -> Result<(), SessionError> {
        let turn = self.turn().ok_or(SessionError::Finished)?;
        if self.engine.plays(turn) {
            return Err(SessionError::WrongTurn(turn));
        }
        self.apply(vertex)
    }

    /// Plays the lowest-id optimal move and returns the evaluations it was
    /// chosen from.
    pub fn engine_move(&mut self) -> Result<Vec<MoveEval>, SessionError> {
        let turn = self.turn().ok_or(SessionError::Finished)?;
        if !self.engine.plays(turn) {
            return Err(SessionError::NotEngineTurn(turn));
        }
        let evals = self.raw_evals()?;
        let best = evals
            .iter()
            .find(|e| e.optimal)
            .expect("a legal move exists")
            .vertex;
        self.apply(best)?;
        Ok(evals)
    }

    /// Exact evaluations for the side to move.
    pub fn evals(&mut self) -> Result<Vec<EvalView>, SessionError> {
        let evals = self.raw_evals()?;
        Ok(self.eval_views(&evals))
    }

    pub fn eval_views(&self, evals: &[MoveEval]) -> Vec<EvalView> {
        let scale = self.graph().scale();
        evals
            .iter()
            .map(|e| EvalView {
                vertex: e.vertex,
                value_after: format_scaled(e.value_after as i128, scale),
                optimal: e.optimal,
            })
            .collect()
    }

    fn raw_evals(&mut self) -> Result<Vec<MoveEval>, SessionError> {
        if self.is_finished() {
            return Err(SessionError::Finished);
        }
        Ok(self
            .solver
            .evaluate_moves(self.remaining)
            .expect("the remainder stays connected"))
    }

    pub fn undo(&mut self) -> Result<(), SessionError> {
        let ply = self.history.pop().ok_or(SessionError::EmptyHistory)?;
        let w = self.graph().weight(ply.vertex);
        match ply.mover {
            Player::Alice => self.alice -= w,
            Player::Bob => self.bob -= w,
        }
        self.remaining.insert(ply.vertex);
        Ok(())
    }

    fn apply(&mut self, vertex: usize) -> Result<(), SessionError> {
        let turn = self.turn().ok_or(SessionError::Finished)?;
        if vertex >= self.graph().order() || !self.legal().contains(vertex) {
            return Err(SessionError::IllegalMove(vertex));
        }
        let w = self.graph().weight(vertex);
        match turn {
            Player::Alice => self.alice += w,
            Player::Bob => self.bob += w,
        }
        self.remaining.remove(vertex);
        self.history.push(Ply {
            vertex,
            mover: turn,
        });
        Ok(())
    }

    fn legal(&self) -> VertexSet {
        if self.is_finished() {
            return VertexSet::EMPTY;
        }
        legal_moves(self.graph(), self.remaining).expect("the remainder stays connected")
    }

    pub fn view(&self) -> View {
        let g = self.graph();
        let scale = g.scale();
        let text = |x: u64| format_scaled(x as i128, scale);
        let finished = self.is_finished();
        View {
            n: g.order(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            weights: g.weights().iter().map(|&w| text(w)).collect(),
            remaining: self.remaining.to_vec(),
            history: self.history.clone(),
            scores: Scores {
                alice: text(self.alice),
                bob: text(self.bob),
            },
            turn: self.turn(),
            legal_moves: self.legal().to_vec(),
            finished,
            verdict: finished.then(|| {
                // Alice wins with at least half: 2·alice >= alice + bob.
                if self.alice >= self.bob {
                    "Alice wins"
                } else {
                    "Bob wins"
                }
                .to_string()
            }),
            engine_role: self.engine,
        }
    }
}
