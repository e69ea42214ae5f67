//! HTTP plumbing for remote classifiers and similarity scorers.
//!
//! One small JSON-over-POST client with retry/backoff, a bounded-parallelism
//! runner that keeps results in input order, and a remote implementation of
//! the similarity-scorer interface.  Treatment of failures: transport
//! errors, HTTP 429, and 5xx responses are retried with exponential
//! backoff; other non-success statuses fail immediately.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alignment::{AlignmentError, SimilarityScorer};

#[derive(Debug, Error)]
pub enum RemoteError {
    #[error("request to {url} failed: {message}")]
    Transport { url: String, message: String },
    #[error("{url} answered HTTP {status}: {body}")]
    Status { url: String, status: u16, body: String },
    #[error("could not decode response from {url}: {message}")]
    Decode { url: String, message: String },
    #[error("invalid client config: {0}")]
    Config(String),
}

/// Retry schedule: `max_attempts` tries total, exponential backoff between
/// them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetryPolicy {
    pub max_attempts: usize,
    pub initial_backoff: Duration,
    pub multiplier: f64,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        RetryPolicy {
            max_attempts: 3,
            initial_backoff: Duration::from_millis(200),
            multiplier: 2.0,
        }
    }
}

impl RetryPolicy {
    /// No retries: a single attempt.
    pub fn none() -> Self {
        RetryPolicy { max_attempts: 1, ..RetryPolicy::default() }
    }

    /// Pause before retry number `attempt` (1-based count of failures so
    /// far).
    fn backoff_for(&self, attempt: usize) -> Duration {
        let factor = self.multiplier.powi(attempt.saturating_sub(1) as i32);
        self.initial_backoff.mul_f64(factor.max(0.0))
    }

    fn validate(&self) -> Result<(), RemoteError> {
        if self.max_attempts == 0 {
            return Err(RemoteError::Config("max_attempts must be at least 1".into()));
        }
        if !(self.multiplier >= 1.0) {
            return Err(RemoteError::Config(format!(
                "backoff multiplier {} must be >= 1",
                self.multiplier
            )));
        }
        Ok(())
    }
}

fn should_retry_status(status: u16) -> bool {
    status == 429 || (500..=599).contains(&status)
}

/// Blocking JSON POST client with retry and optional bearer auth.
pub struct JsonClient {
    http: reqwest::blocking::Client,
    retry: RetryPolicy,
    bearer: Option<String>,
}

impl JsonClient {
    pub fn new(retry: RetryPolicy) -> Result<JsonClient, RemoteError> {
        Self::with_timeout(retry, Duration::from_secs(30))
    }

    pub fn with_timeout(retry: RetryPolicy, timeout: Duration) -> Result<JsonClient, RemoteError> {
        retry.validate()?;
        let http = reqwest::blocking::Client::builder()
            .timeout(timeout)
            .build()
            .map_err(|e| RemoteError::Config(e.to_string()))?;
        Ok(JsonClient { http, retry, bearer: None })
    }

    /// Attach a bearer token sent as `Authorization: Bearer <token>`.
    pub fn with_bearer(mut self, token: impl Into<String>) -> JsonClient {
        self.bearer = Some(token.into());
        self
    }

    /// POST `body` as JSON and decode the JSON response.
    ///
    /// Retries transport failures and retryable statuses (429, 5xx) per the
    /// policy; fails fast on any other non-success status.
    pub fn post_json<B: Serialize, T: DeserializeOwned>(
        &self,
        url: &str,
        body: &B,
    ) -> Result<T, RemoteError> {
        let mut last_error = None;
        for attempt in 1..=self.retry.max_attempts {
            if attempt > 1 {
                std::thread::sleep(self.retry.backoff_for(attempt - 1));
            }
            let mut request = self.http.post(url).json(body);
            if let Some(token) = &self.bearer {
                request = request.bearer_auth(token);
            }
            match request.send() {
                Err(err) => {
                    last_error =
                        Some(RemoteError::Transport { url: url.into(), message: err.to_string() });
                }
                Ok(response) => {
                    let status = response.status().as_u16();
                    if response.status().is_success() {
                        let text = response.text().map_err(|e| RemoteError::Transport {
                            url: url.into(),
                            message: e.to_string(),
                        })?;
                        return serde_json::from_str(&text).map_err(|e| RemoteError::Decode {
                            url: url.into(),
                            message: e.to_string(),
                        });
                    }
                    let body = response.text().unwrap_or_default();
                    let error = RemoteError::Status { url: url.into(), status, body };
                    if !should_retry_status(status) {
                        return Err(error);
                    }
                    last_error = Some(error);
                }
            }
        }
        Err(last_error.expect("at least one attempt always runs"))
    }
}

/// Run `work` over `inputs` on at most `limit` threads.
///
/// Results come back in input order regardless of scheduling.  Entries are
/// `None` when an item was never attempted because `fail_fast` stopped the
/// run after an earlier failure; at least one `Some(Err(..))` precedes any
/// `None`.
pub fn run_bounded<I, T, E, F>(
    inputs: &[I],
    limit: usize,
    fail_fast: bool,
    work: F,
) -> Vec<Option<Result<T, E>>>
where
    I: Sync,
    T: Send,
    E: Send,
    F: Fn(&I) -> Result<T, E> + Sync,
{
    let limit = limit.max(1).min(inputs.len().max(1));
    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let results: Vec<Mutex<Option<Result<T, E>>>> =
        inputs.iter().map(|_| Mutex::new(None)).collect();

    std::thread::scope(|scope| {
        for _ in 0..limit {
            scope.spawn(|| loop {
                if fail_fast && stop.load(Ordering::SeqCst) {
                    return;
                }
                let index = next.fetch_add(1, Ordering::SeqCst);
                if index >= inputs.len() {
                    return;
                }
                let outcome = work(&inputs[index]);
                if fail_fast && outcome.is_err() {
                    stop.store(true, Ordering::SeqCst);
                }
                *results[index].lock().expect("result slot poisoned") = Some(outcome);
            });
        }
    });

    results
        .into_iter()
        .map(|slot| slot.into_inner().expect("result slot poisoned"))
        .collect()
}

/// Default parallelism for remote calls.
pub const DEFAULT_PARALLELISM: usize = 4;

#[derive(Serialize)]
struct SimilarityRequest<'a> {
    pairs: Vec<SimilarityPair<'a>>,
}

#[derive(Serialize)]
struct SimilarityPair<'a> {
    a: &'a str,
    b: &'a str,
}

#[derive(Deserialize)]
struct SimilarityResponse {
    scores: Vec<f64>,
}

/// Similarity scoring over HTTP: POST `{"pairs":[{"a":..,"b":..},..]}`,
/// expect `{"scores":[..]}` in pair order.
pub struct RemoteSimilarityScorer {
    client: JsonClient,
    url: String,
}

impl RemoteSimilarityScorer {
    pub fn new(client: JsonClient, url: impl Into<String>) -> RemoteSimilarityScorer {
        RemoteSimilarityScorer { client, url: url.into() }
    }
}

impl SimilarityScorer for RemoteSimilarityScorer {
    fn score(&self, pairs: &[(String, String)]) -> Result<Vec<f64>, AlignmentError> {
        if pairs.is_empty() {
            return Ok(Vec::new());
        }
        let request = SimilarityRequest {
            pairs: pairs
                .iter()
                .map(|(a, b)| SimilarityPair { a: a.as_str(), b: b.as_str() })
                .collect(),
        };
        let response: SimilarityResponse = self
            .client
            .post_json(&self.url, &request)
            .map_err(|e| AlignmentError::Scorer(e.to_string()))?;
        Ok(response.scores)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn backoff_grows_exponentially() {
        let policy = RetryPolicy {
            max_attempts: 4,
            initial_backoff: Duration::from_millis(100),
            multiplier: 2.0,
        };
        assert_eq!(policy.backoff_for(1), Duration::from_millis(100));
        assert_eq!(policy.backoff_for(2), Duration::from_millis(200));
        assert_eq!(policy.backoff_for(3), Duration::from_millis(400));
    }

    #[test]
    fn retryable_statuses_are_429_and_5xx() {
        assert!(should_retry_status(429));
        assert!(should_retry_status(500));
        assert!(should_retry_status(503));
        assert!(!should_retry_status(400));
        assert!(!should_retry_status(404));
        assert!(!should_retry_status(401));
    }

    #[test]
    fn invalid_retry_policies_are_rejected() {
        let zero = RetryPolicy { max_attempts: 0, ..RetryPolicy::default() };
        assert!(JsonClient::new(zero).is_err());
        let shrink = RetryPolicy { multiplier: 0.5, ..RetryPolicy::default() };
        assert!(JsonClient::new(shrink).is_err());
    }

    #[test]
    fn bounded_run_keeps_input_order() {
        let inputs: Vec<usize> = (0..32).collect();
        let results = run_bounded(&inputs, 4, false, |&i| {
            // Finish later items faster to scramble completion order.
            std::thread::sleep(Duration::from_millis((32 - i as u64) % 7));
            Ok::<usize, ()>(i * 10)
        });
        let values: Vec<usize> =
            results.into_iter().map(|r| r.unwrap().unwrap()).collect();
        assert_eq!(values, (0..32).map(|i| i * 10).collect::<Vec<_>>());
    }

    #[test]
    fn bounded_run_with_limit_one_is_sequential() {
        let inputs = [1, 2, 3];
        let order = Mutex::new(Vec::new());
        let results = run_bounded(&inputs, 1, false, |&i| {
            order.lock().unwrap().push(i);
            Ok::<i32, ()>(i)
        });
        assert_eq!(*order.lock().unwrap(), [1, 2, 3]);
        assert_eq!(results.len(), 3);
    }

    #[test]
    fn fail_fast_skips_later_items() {
        let inputs: Vec<usize> = (0..64).collect();
        let results = run_bounded(&inputs, 1, true, |&i| {
            if i == 3 {
                Err("boom")
            } else {
                Ok(i)
            }
        });
        assert!(matches!(results[3], Some(Err("boom"))));
        assert!(results[0].is_some() && results[1].is_some() && results[2].is_some());
        assert!(results[10].is_none(), "items after the failure are skipped");
        let first_none = results.iter().position(|r| r.is_none()).unwrap();
        assert!(
            results[..first_none].iter().any(|r| matches!(r, Some(Err(_)))),
            "a failure precedes the first skip"
        );
    }

    #[test]
    fn without_fail_fast_every_item_runs() {
        let inputs: Vec<usize> = (0..16).collect();
        let results = run_bounded(&inputs, 3, false, |&i| {
            if i % 2 == 0 {
                Err(i)
            } else {
                Ok(i)
            }
        });
        assert!(results.iter().all(|r| r.is_some()));
        assert_eq!(results.iter().filter(|r| matches!(r, Some(Err(_)))).count(), 8);
    }

    #[test]
    fn empty_input_runs_no_work() {
        let results = run_bounded::<usize, usize, (), _>(&[], 4, true, |&i| Ok(i));
        assert!(results.is_empty());
    }
}
