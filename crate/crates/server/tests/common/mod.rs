#![allow(dead_code)]

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::Value;
use tower::ServiceExt;

use semprobe_core::context::films_and_actors;
use semprobe_server::{app, Config};

pub struct Client {
    pub app: Router,
}

pub struct Reply {
    pub status: StatusCode,
    pub text: String,
}

impl Reply {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.text).unwrap_or_else(|e| panic!("{e}: {}", self.text))
    }
}

impl Client {
    pub fn new(config: Config) -> Client {
        Client {
            app: app(config).unwrap(),
        }
    }

    pub fn memory() -> Client {
        Client::new(Config::default())
    }

    pub async fn send(&self, method: Method, uri: &str, headers: &[(&str, &str)], body: impl Into<Body>) -> Reply {
        let mut req = Request::builder().method(method).uri(uri);
        for (k, v) in headers {
            req = req.header(*k, *v);
        }
        let resp = self.app.clone().oneshot(req.body(body.into()).unwrap()).await.unwrap();
        let status = resp.status();
        let bytes = resp.into_body().collect().await.unwrap().to_bytes();
        Reply {
            status,
            text: String::from_utf8(bytes.to_vec()).unwrap(),
        }
    }

    pub async fn get(&self, uri: &str) -> Reply {
        self.send(Method::GET, uri, &[], Body::empty()).await
    }

    pub async fn post_json(&self, uri: &str, body: &str) -> Reply {
        self.send(
            Method::POST,
            uri,
            &[("content-type", "application/json")],
            body.to_string(),
        )
        .await
    }

    pub async fn put_json(&self, uri: &str, body: &str) -> Reply {
        self.send(
            Method::PUT,
            uri,
            &[("content-type", "application/json")],
            body.to_string(),
        )
        .await
    }

    pub async fn upload(&self, cxt: &str) -> Reply {
        self.send(
            Method::POST,
            "/datasets",
            &[("content-type", "text/plain")],
            cxt.to_string(),
        )
        .await
    }

    /// Uploads the films context and opens a session on it.
    pub async fn films_session(&self) -> (String, String) {
        let d = self.upload(&films_and_actors().write_cxt()).await.json();
        let id = d["id"].as_str().unwrap().to_string();
        let s = self
            .send(Method::POST, &format!("/datasets/{id}/probes"), &[], Body::empty())
            .await
            .json();
        (id, s["sessionId"].as_str().unwrap().to_string())
    }
}

/// Runs the films walkthrough on a fresh in-memory server and returns
/// one transcript line per step.
pub async fn walkthrough() -> String {
    let c = Client::memory();
    let mut out = Vec::new();
    let d = c.upload(&films_and_actors().write_cxt()).await;
    assert_eq!(d.status, StatusCode::CREATED);
    out.push(d.text.clone());
    let id = d.json()["id"].as_str().unwrap().to_string();
    let s = c
        .send(Method::POST, &format!("/datasets/{id}/probes"), &[], Body::empty())
        .await;
    assert_eq!(s.status, StatusCode::CREATED);
    out.push(s.text.clone());
    let sid = s.json()["sessionId"].as_str().unwrap().to_string();
    let steps = [
        (Method::POST, "objects", r#"{"object":"Brad"}"#),
        (Method::POST, "objects", r#"{"object":"Cate"}"#),
        (Method::PUT, "weights", r#"{"object":"Cate","weight":0.5}"#),
    ];
    for (rev, (method, path, body)) in steps.into_iter().enumerate() {
        let r = c
            .send(
                method,
                &format!("/probes/{sid}/{path}"),
                &[("content-type", "application/json"), ("if-match", &rev.to_string())],
                body.to_string(),
            )
            .await;
        assert_eq!(r.status, StatusCode::OK, "{}", r.text);
        out.push(r.text);
    }
    // F2 is group 1 in the films context
    let r = c.get(&format!("/probes/{sid}/reveal?group=1")).await;
    assert_eq!(r.status, StatusCode::OK, "{}", r.text);
    out.push(r.text);
    out.join("\n") + "\n"
}
