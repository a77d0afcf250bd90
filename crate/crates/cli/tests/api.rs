use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use topogame_cli::server::{router, AppState};
use topogame_core::game::SolveOptions;

fn app(record: Option<&std::path::Path>) -> Router {
    router(AppState::new(SolveOptions::default(), record).unwrap())
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    use tower::ServiceExt;
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(match body {
            Some(v) => Body::from(v.to_string()),
            None => Body::empty(),
        })
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (
        status,
        serde_json::from_slice(&bytes).unwrap_or(Value::Null),
    )
}

const SIERPINSKI: &str = r#"{"version":1,"points":2,"preorder":[[1,1],[0,1]]}"#;

#[tokio::test]
async fn full_game_against_the_engine() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("games.jsonl");
    let app = app(Some(&log));

    let (status, space) = call(
        &app,
        "POST",
        "/api/space",
        Some(serde_json::from_str(SIERPINSKI).unwrap()),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(space["invariants"]["wl_degree"], 1);
    let space_id = space["space_id"].as_str().unwrap().to_string();

    let (status, game) = call(
        &app,
        "POST",
        "/api/game",
        Some(json!({ "space_id": space_id, "kind": "sel-o-od", "horizon": 1, "human": "one" })),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(game["position"]["inning"], 0);
    let id = game["game_id"].as_str().unwrap().to_string();

    let (_, state) = call(&app, "GET", &format!("/api/game/{id}"), None).await;
    assert_eq!(state["evaluation"], "two");
    assert_eq!(state["done"], false);
    let first = state["legal_moves"][0].clone();

    let (status, out) = call(
        &app,
        "POST",
        &format!("/api/game/{id}/move"),
        Some(json!({ "move": first })),
    )
    .await;
    assert_eq!(status, StatusCode::OK, "{out}");
    assert_eq!(out["done"], true);
    assert_eq!(out["winner"], "two");
    assert!(out["engine_reply"]["pick"].is_array());
    assert_eq!(out["legal_moves"], json!([]));

    let (status, again) = call(
        &app,
        "POST",
        &format!("/api/game/{id}/move"),
        Some(json!({ "move": first })),
    )
    .await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert!(again["error"].as_str().unwrap().contains("over"));

    let logged = std::fs::read_to_string(&log).unwrap();
    let transcript: Value = serde_json::from_str(logged.lines().next().unwrap()).unwrap();
    assert_eq!(transcript["winner"], "two");
    assert_eq!(transcript["innings"].as_array().unwrap().len(), 2);
}

#[tokio::test]
async fn engine_moves_first_when_human_is_two() {
    let app = app(None);
    let (_, space) = call(
        &app,
        "POST",
        "/api/space",
        Some(serde_json::from_str(SIERPINSKI).unwrap()),
    )
    .await;
    let (_, game) = call(
        &app,
        "POST",
        "/api/game",
        Some(json!({ "space_id": space["space_id"], "kind": "po", "horizon": 2, "human": "two" })),
    )
    .await;
    assert!(game["position"]["pending"]["point"].is_u64());
    assert!(!game["state"]["legal_moves"].as_array().unwrap().is_empty());
}

#[tokio::test]
async fn errors_are_reported() {
    let app = app(None);
    let (status, body) = call(
        &app,
        "POST",
        "/api/space",
        Some(json!({ "version": 1, "points": 2, "preorder": [[1, 0], [1, 0]] })),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body["error"].as_str().unwrap().contains("reflexive"));

    let (status, _) = call(&app, "GET", "/api/game/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    let (status, _) = call(
        &app,
        "POST",
        "/api/game",
        Some(json!({ "space_id": "02d0", "kind": "oo", "horizon": 1, "human": "one" })),
    )
    .await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    let (_, space) = call(
        &app,
        "POST",
        "/api/space",
        Some(serde_json::from_str(SIERPINSKI).unwrap()),
    )
    .await;
    let (status, body) = call(
        &app,
        "POST",
        "/api/game",
        Some(json!({ "space_id": space["space_id"], "kind": "sel-fin", "horizon": 1, "human": "one" })),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body["error"].as_str().unwrap().contains("cap"));

    let (_, game) = call(
        &app,
        "POST",
        "/api/game",
        Some(json!({ "space_id": space["space_id"], "kind": "oo", "horizon": 2, "human": "one" })),
    )
    .await;
    let id = game["game_id"].as_str().unwrap();
    let (status, body) = call(
        &app,
        "POST",
        &format!("/api/game/{id}/move"),
        Some(json!({ "move": { "point": 0 } })),
    )
    .await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["code"], "illegal_move");
    let (status, _) = call(
        &app,
        "POST",
        &format!("/api/game/{id}/move"),
        Some(json!({ "mv": 1 })),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}
