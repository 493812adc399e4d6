use std::time::{Duration, Instant};

use axum::body::Body;
use axum::http::{header, Method, Request, StatusCode};
use axum::Router;
use bezier_spline_service::{router, Config};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(&Config::default()).unwrap()
}

async fn send(app: Router, method: Method, uri: &str, body: Vec<u8>) -> (StatusCode, Vec<u8>) {
    let request = Request::builder()
        .method(method)
        .uri(uri)
        .header(header::CONTENT_TYPE, "application/json")
        .body(Body::from(body))
        .unwrap();
    let response = app.oneshot(request).await.unwrap();
    let status = response.status();
    let bytes = response.into_body().collect().await.unwrap().to_bytes();
    (status, bytes.to_vec())
}

async fn post(body: Value) -> (StatusCode, Value) {
    let (status, bytes) = send(
        app(),
        Method::POST,
        "/api/v1/spline",
        serde_json::to_vec(&body).unwrap(),
    )
    .await;
    (status, serde_json::from_slice(&bytes).unwrap())
}

fn spike_request() -> Value {
    json!({
        "tau": [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
        "F": [1, 3, 3, 1, 2, 7, 1.5, 1, 10, 2, 1.5],
    })
}

#[tokio::test]
async fn spike_request_pins_endpoints_and_is_smooth() {
    let (status, body) = post(spike_request()).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["phi"][0], 1.0);
    assert_eq!(body["phi"][10], 1.5);
    assert_eq!(body["alpha"], json!(vec![0.5; 10]));
    let c1 = body["diagnostics"]["c1_residuals"].as_array().unwrap();
    assert_eq!(c1.len(), 9);
    assert!(c1.iter().all(|r| r.as_f64().unwrap() <= 1e-9));
    let margins = body["diagnostics"]["dominance_margins"].as_array().unwrap();
    assert!(margins.iter().all(|m| m.as_f64().unwrap() > 0.0));
    assert!(body["diagnostics"]["hull_margin"].is_number());
    assert_eq!(body["samples"].as_array().unwrap().len(), 1000);
}

#[tokio::test]
async fn tent_request() {
    let (status, body) = post(json!({"tau": [0, 1, 2], "F": [0, 1, 0], "samples": 5})).await;
    assert_eq!(status, StatusCode::OK);
    let phi: Vec<f64> = serde_json::from_value(body["phi"].clone()).unwrap();
    for (got, want) in phi.iter().zip([0.0, 0.8, 0.0]) {
        assert!((got - want).abs() < 1e-12);
    }
    assert_eq!(body["mode"], "scalar");
    assert_eq!(body["hull"], json!([[0.0, 0.0], [2.0, 0.0], [1.0, 1.0]]));
}

#[tokio::test]
async fn parametric_request() {
    let (status, body) = post(json!({
        "mode": "parametric",
        "points": [[0, 0], [1, 0], [1, 1], [0, 1]],
        "parameterization": "uniform",
        "samples": 10,
    }))
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["mode"], "parametric");
    assert_eq!(body["t"], json!([0.0, 1.0, 2.0, 3.0]));
    assert_eq!(body["phi"][0], json!([0.0, 0.0]));
    assert_eq!(body["samples"][9], json!([3.0, 0.0, 1.0]));
}

#[tokio::test]
async fn strict_alpha_is_rejected_naming_the_range() {
    let (status, body) = post(json!({"tau": [0, 1, 2], "F": [0, 1, 0], "alpha": 0.9})).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let v = &body["violations"][0];
    assert_eq!(v["code"], "alpha_range");
    assert!(v["message"].as_str().unwrap().contains("[1/3, 2/3]"));
}

#[tokio::test]
async fn relaxed_alpha_is_echoed_with_warnings() {
    let (status, body) = post(json!({
        "tau": [0, 1, 2], "F": [0, 1, 0], "alpha": [0.5, 0.9], "strict": false, "samples": 3,
    }))
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["alpha"], json!([0.5, 0.9]));
    assert_eq!(body["warnings"].as_array().unwrap().len(), 1);
}

#[tokio::test]
async fn every_violation_is_listed_with_a_pointer() {
    let (status, body) = post(json!({
        "tau": [0, 2, 1], "F": [0, 1, "x"], "alpha": [0.5, 0.95], "samples": 0,
    }))
    .await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["error"], "validation");
    let paths: Vec<&str> = body["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["path"].as_str().unwrap())
        .collect();
    for expected in ["/tau/2", "/F/2", "/alpha/1", "/samples"] {
        assert!(
            paths.contains(&expected),
            "{expected} missing from {paths:?}"
        );
    }
}

#[tokio::test]
async fn malformed_json_is_400() {
    let (status, bytes) = send(app(), Method::POST, "/api/v1/spline", b"{\"tau\":".to_vec()).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let body: Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(body["error"], "malformed_json");
}

#[tokio::test]
async fn oversized_input_is_413() {
    let n = 100_001;
    let tau: Vec<usize> = (0..n).collect();
    let (status, body) = post(json!({"tau": tau, "F": vec![0; n]})).await;
    assert_eq!(status, StatusCode::PAYLOAD_TOO_LARGE);
    assert_eq!(body["violations"][0]["code"], "too_large");
}

#[tokio::test]
async fn largest_accepted_input_succeeds() {
    let n = 100_000;
    let tau: Vec<usize> = (0..n).collect();
    let values: Vec<f64> = (0..n).map(|i| (i as f64 * 0.01).sin()).collect();
    let (status, body) = post(json!({"tau": tau, "F": values, "samples": 2})).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["phi"].as_array().unwrap().len(), n);
}

#[tokio::test]
async fn examples_endpoint() {
    let (status, bytes) = send(app(), Method::GET, "/api/v1/examples/1", vec![]).await;
    assert_eq!(status, StatusCode::OK);
    let body: Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(
        body["F"],
        json!([1.0, 3.0, 3.0, 1.0, 2.0, 7.0, 1.5, 1.0, 10.0, 2.0, 1.5])
    );
    assert_eq!(body["tau"].as_array().unwrap().len(), 11);

    let (status, bytes) = send(app(), Method::GET, "/api/v1/examples/2", vec![]).await;
    assert_eq!(status, StatusCode::OK);
    let body: Value = serde_json::from_slice(&bytes).unwrap();
    let tau: Vec<f64> = serde_json::from_value(body["tau"].clone()).unwrap();
    let values: Vec<f64> = serde_json::from_value(body["F"].clone()).unwrap();
    assert_eq!(tau.len(), 11);
    for (x, y) in tau.iter().zip(&values) {
        assert!(
            (y - (x - x * x).sqrt()).abs() < 1e-9,
            "({x}, {y}) off the arc"
        );
    }

    for id in ["3", "0", "abc"] {
        let (status, _) = send(
            app(),
            Method::GET,
            &format!("/api/v1/examples/{id}"),
            vec![],
        )
        .await;
        assert_eq!(status, StatusCode::NOT_FOUND, "id {id}");
    }
}

#[tokio::test]
async fn example_data_round_trips_through_the_spline_endpoint() {
    let (_, bytes) = send(app(), Method::GET, "/api/v1/examples/1", vec![]).await;
    let mut request: Value = serde_json::from_slice(&bytes).unwrap();
    request["samples"] = json!(10);
    let (status, body) = post(request).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["phi"][10], 1.5);
}

#[tokio::test]
async fn healthz() {
    let (status, a) = send(app(), Method::GET, "/healthz", vec![]).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(a, b"ok");
    let (_, b) = send(app(), Method::GET, "/healthz", vec![]).await;
    assert_eq!(a, b);
    for method in [Method::POST, Method::PUT, Method::DELETE, Method::PATCH] {
        let (status, _) = send(app(), method.clone(), "/healthz", vec![]).await;
        assert_eq!(status, StatusCode::METHOD_NOT_ALLOWED, "{method}");
    }
}

#[tokio::test]
async fn schema_is_published() {
    let (status, bytes) = send(app(), Method::GET, "/api/v1/schema", vec![]).await;
    assert_eq!(status, StatusCode::OK);
    let schema: Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(schema["title"], "SplineRequest");
}

#[tokio::test]
async fn cors_allows_the_configured_origin() {
    let app = router(&Config {
        cors_origin: "http://editor.test".to_owned(),
        ..Config::default()
    })
    .unwrap();
    let request = Request::builder()
        .method(Method::OPTIONS)
        .uri("/api/v1/spline")
        .header(header::ORIGIN, "http://editor.test")
        .header(header::ACCESS_CONTROL_REQUEST_METHOD, "POST")
        .body(Body::empty())
        .unwrap();
    let response = app.oneshot(request).await.unwrap();
    assert_eq!(
        response.headers()[header::ACCESS_CONTROL_ALLOW_ORIGIN],
        "http://editor.test"
    );
}

#[tokio::test]
async fn invalid_cors_origin_is_a_config_error() {
    let config = Config {
        cors_origin: "bad\norigin".to_owned(),
        ..Config::default()
    };
    assert!(router(&config).is_err());
}

#[tokio::test(flavor = "multi_thread")]
async fn identical_concurrent_requests_give_identical_bytes() {
    let body = serde_json::to_vec(&spike_request()).unwrap();
    let (a, b) = tokio::join!(
        send(app(), Method::POST, "/api/v1/spline", body.clone()),
        send(app(), Method::POST, "/api/v1/spline", body.clone()),
    );
    assert_eq!(a.0, StatusCode::OK);
    assert_eq!(a.1, b.1);
}

#[tokio::test(flavor = "multi_thread")]
async fn hundred_points_two_thousand_samples_within_50ms() {
    let n = 100;
    let tau: Vec<f64> = (0..n).map(|i| i as f64 * 0.37).collect();
    let values: Vec<f64> = (0..n).map(|i| ((i * 7919) % 101) as f64 / 10.0).collect();
    let body = serde_json::to_vec(&json!({"tau": tau, "F": values, "samples": 2000})).unwrap();
    // Warm up once so the measurement excludes one-off setup.
    send(app(), Method::POST, "/api/v1/spline", body.clone()).await;
    let mut best = Duration::MAX;
    for _ in 0..5 {
        let start = Instant::now();
        let (status, _) = send(app(), Method::POST, "/api/v1/spline", body.clone()).await;
        best = best.min(start.elapsed());
        assert_eq!(status, StatusCode::OK);
    }
    assert!(best < Duration::from_millis(50), "took {best:?}");
}
