use thiserror::Error;

#[derive(Debug, Error)]
pub enum ForgeError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("table parse error: {0}")]
    Parse(String),
    #[error("block collision: {0}")]
    Collision(String),
    #[error("family {family} does not apply to (n,m,t)=({n},{m},{t})")]
    NotApplicable { family: String, n: u32, m: u32, t: u32 },
    #[error("verification failed for {what}: {detail}")]
    Verification { what: String, detail: String },
    #[error("search for {0} found no solution")]
    NotFound(String),
    #[error("search budget exhausted for {0}")]
    BudgetExhausted(String),
    #[error("external ingredient required: {0}")]
    ExternalRequired(String),
    #[error("not constructible: {0}")]
    NotConstructible(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, ForgeError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(ForgeError::InvalidParams(msg.into()))
}
