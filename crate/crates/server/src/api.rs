use std::collections::HashMap;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Path, Query, State};
use axum::http::header::{CONTENT_TYPE, IF_MATCH};
use axum::http::{HeaderMap, StatusCode};
use axum::response::IntoResponse;
use axum::routing::{delete, get, post, put};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::{json, Value};

use semprobe_core::lattice::{aoc_json, iceberg_filter, lattice_json, lattice_to_dot, Labeling};
use semprobe_core::probe::{
    add_group_extent, complementary_cover, reveal, CoversView, DeltaView, GroupView, Layout, LayoutView, RevealView,
    Weight,
};
use semprobe_core::{parse_rational, FormalContext};

use crate::error::ApiError;
use crate::store::{DatasetRecord, Store};
use crate::AppState;

type ApiResult<T> = Result<T, ApiError>;

pub fn routes(state: AppState) -> Router {
    let limit = state.config().max_body_bytes;
    Router::new()
        .route("/datasets", post(create_dataset))
        .route("/datasets/{id}", get(get_dataset))
        .route("/datasets/{id}/groups", get(get_groups))
        .route("/datasets/{id}/lattice", get(get_lattice))
        .route("/datasets/{id}/aoc", get(get_aoc))
        .route("/datasets/{id}/lattice.dot", get(get_lattice_dot))
        .route("/datasets/{id}/transpose", post(transpose))
        .route("/datasets/{id}/probes", post(create_session))
        .route("/probes/{sid}/layout", get(get_layout))
        .route("/probes/{sid}/objects", post(add_object))
        .route("/probes/{sid}/objects/{name}", delete(remove_object))
        .route("/probes/{sid}/clear", post(clear))
        .route("/probes/{sid}/weights", put(set_weight))
        .route("/probes/{sid}/add-group", post(add_group))
        .route("/probes/{sid}/reveal", get(get_reveal))
        .route("/probes/{sid}/covers", get(get_covers))
        .layer(DefaultBodyLimit::max(limit))
        .with_state(state)
}

fn summary(d: &DatasetRecord) -> Value {
    let ctx = d.context();
    json!({
        "id": d.id,
        "name": ctx.name(),
        "objects": ctx.num_objects(),
        "attributes": ctx.num_attributes(),
        "groupCount": d.data.groups().len(),
    })
}

fn parse_body(headers: &HeaderMap, body: &[u8]) -> ApiResult<FormalContext> {
    let text = std::str::from_utf8(body).map_err(|_| ApiError::BadRequest("body is not valid UTF-8".into()))?;
    let media = headers
        .get(CONTENT_TYPE)
        .map(|v| v.to_str().unwrap_or_default())
        .unwrap_or_default()
        .split(';')
        .next()
        .unwrap_or_default()
        .trim()
        .to_ascii_lowercase();
    match media.as_str() {
        "text/csv" | "application/csv" => Ok(FormalContext::parse_csv(text)?),
        "" | "text/plain" | "text/x-cxt" | "application/x-cxt" | "application/octet-stream" => {
            Ok(FormalContext::parse_cxt(text)?)
        }
        other => Err(ApiError::BadRequest(format!("unsupported content type {other:?}"))),
    }
}

async fn blocking<T, F>(f: F) -> ApiResult<T>
where
    F: FnOnce() -> ApiResult<T> + Send + 'static,
    T: Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::Internal(e.to_string()))?
}

async fn create_dataset(
    State(store): State<AppState>,
    headers: HeaderMap,
    body: Bytes,
) -> ApiResult<impl IntoResponse> {
    let ctx = parse_body(&headers, &body)?;
    let record = blocking(move || store.add_dataset(ctx)).await?;
    Ok((StatusCode::CREATED, Json(summary(&record))))
}

async fn get_dataset(State(store): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<Value>> {
    let d = store.dataset(&id)?;
    let mut out = summary(&d);
    out["objectNames"] = json!(d.context().objects());
    out["attributeNames"] = json!(d.context().attributes());
    Ok(Json(out))
}

async fn get_groups(State(store): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<Value>> {
    let d = store.dataset(&id)?;
    let groups: Vec<GroupView> = (0..d.data.groups().len()).map(|g| GroupView::new(&d.data, g)).collect();
    Ok(Json(json!({ "groups": groups })))
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct LatticeQuery {
    min_support: Option<String>,
}

async fn get_lattice(
    State(store): State<AppState>,
    Path(id): Path<String>,
    Query(q): Query<LatticeQuery>,
) -> ApiResult<Json<Value>> {
    let d = store.dataset(&id)?;
    let theta = match q.min_support.as_deref() {
        None => None,
        Some(s) => match parse_rational(s) {
            Some(r) if r <= 1.into() => Some(r),
            _ => {
                return Err(ApiError::BadRequest(format!(
                    "minSupport must be a rational in [0, 1], got {s:?}"
                )))
            }
        },
    };
    let limit = store.config().concept_limit;
    blocking(move || {
        let lattice = d.lattice(limit)?;
        let ctx = d.context();
        let json = match theta {
            None => lattice_json(ctx, &lattice, None),
            Some(t) => lattice_json(ctx, &lattice, Some(&iceberg_filter(&lattice, ctx, t))),
        };
        Ok(Json(
            serde_json::to_value(json).map_err(|e| ApiError::Internal(e.to_string()))?,
        ))
    })
    .await
}

async fn get_aoc(State(store): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<Value>> {
    let d = store.dataset(&id)?;
    let limit = store.config().concept_limit;
    blocking(move || {
        let (lattice, aoc) = d.aoc(limit)?;
        let json = aoc_json(d.context(), &lattice, &aoc);
        Ok(Json(
            serde_json::to_value(json).map_err(|e| ApiError::Internal(e.to_string()))?,
        ))
    })
    .await
}

async fn get_lattice_dot(State(store): State<AppState>, Path(id): Path<String>) -> ApiResult<impl IntoResponse> {
    let d = store.dataset(&id)?;
    let limit = store.config().concept_limit;
    let dot = blocking(move || {
        let lattice = d.lattice(limit)?;
        Ok(lattice_to_dot(d.context(), &lattice, Labeling::Full))
    })
    .await?;
    Ok(([(CONTENT_TYPE, "text/vnd.graphviz")], dot))
}

async fn transpose(State(store): State<AppState>, Path(id): Path<String>) -> ApiResult<impl IntoResponse> {
    let d = store.dataset(&id)?;
    let record = blocking(move || store.add_dataset(d.context().transpose())).await?;
    Ok((StatusCode::CREATED, Json(summary(&record))))
}

fn layout_json(d: &DatasetRecord, layout: &Layout) -> Value {
    json!(LayoutView::new(&d.data, layout))
}

async fn create_session(State(store): State<AppState>, Path(id): Path<String>) -> ApiResult<impl IntoResponse> {
    let d = store.dataset(&id)?;
    let handle = store.create_session(d)?;
    let s = handle.lock().unwrap();
    Ok((
        StatusCode::CREATED,
        Json(json!({
            "sessionId": s.id,
            "revision": s.revision,
            "layout": layout_json(&s.dataset, &s.layout),
        })),
    ))
}

async fn get_layout(State(store): State<AppState>, Path(sid): Path<String>) -> ApiResult<Json<Value>> {
    let handle = store.session(&sid)?;
    let s = handle.lock().unwrap();
    let view = LayoutView::new(&s.dataset.data, &s.layout);
    Ok(Json(json!({ "revision": s.revision, "layers": view.layers })))
}

/// Accepts `3`, `"3"` and `W/"3"`.
fn if_match(headers: &HeaderMap) -> ApiResult<Option<u64>> {
    let Some(raw) = headers.get(IF_MATCH) else {
        return Ok(None);
    };
    let text = raw.to_str().unwrap_or_default().trim();
    let text = text.strip_prefix("W/").unwrap_or(text).trim_matches('"');
    text.parse()
        .map(Some)
        .map_err(|_| ApiError::BadRequest(format!("If-Match must be a revision number, got {text:?}")))
}

fn mutate<F>(store: &Store, sid: &str, headers: &HeaderMap, change: F) -> ApiResult<Json<Value>>
where
    F: FnOnce(&semprobe_core::probe::GroupedContext, &mut semprobe_core::probe::ProbeState) -> ApiResult<()>,
{
    let expected = if_match(headers)?;
    let (revision, layout, delta, d) = store.mutate(sid, expected, change)?;
    Ok(Json(json!({
        "revision": revision,
        "layout": layout_json(&d, &layout),
        "delta": DeltaView::from(&delta),
    })))
}

fn json_body<T: serde::de::DeserializeOwned>(body: &[u8]) -> ApiResult<T> {
    serde_json::from_slice(body).map_err(|e| ApiError::BadRequest(format!("invalid JSON body: {e}")))
}

#[derive(Deserialize)]
struct ObjectBody {
    object: String,
}

async fn add_object(
    State(store): State<AppState>,
    Path(sid): Path<String>,
    headers: HeaderMap,
    body: Bytes,
) -> ApiResult<Json<Value>> {
    let ObjectBody { object } = json_body(&body)?;
    mutate(&store, &sid, &headers, |gc, probe| {
        probe.add_named(gc.context(), &object)?;
        Ok(())
    })
}

async fn remove_object(
    State(store): State<AppState>,
    Path((sid, name)): Path<(String, String)>,
    headers: HeaderMap,
) -> ApiResult<Json<Value>> {
    mutate(&store, &sid, &headers, |gc, probe| {
        probe.remove_named(gc.context(), &name)?;
        Ok(())
    })
}

async fn clear(State(store): State<AppState>, Path(sid): Path<String>, headers: HeaderMap) -> ApiResult<Json<Value>> {
    mutate(&store, &sid, &headers, |_, probe| {
        probe.clear();
        Ok(())
    })
}

#[derive(Deserialize)]
struct WeightBody {
    object: String,
    weight: Value,
}

fn parse_weight(v: &Value) -> ApiResult<Weight> {
    let w = match v {
        Value::String(s) => s.parse()?,
        Value::Number(n) => match n.as_f64() {
            Some(f) => Weight::from_f64(f)?,
            None => return Err(ApiError::BadRequest(format!("invalid weight {n}"))),
        },
        other => return Err(ApiError::BadRequest(format!("invalid weight {other}"))),
    };
    Ok(w)
}

async fn set_weight(
    State(store): State<AppState>,
    Path(sid): Path<String>,
    headers: HeaderMap,
    body: Bytes,
) -> ApiResult<Json<Value>> {
    let WeightBody { object, weight } = json_body(&body)?;
    let weight = parse_weight(&weight)?;
    mutate(&store, &sid, &headers, |gc, probe| {
        probe.set_named_weight(gc.context(), &object, weight)?;
        Ok(())
    })
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct GroupBody {
    group_id: usize,
}

async fn add_group(
    State(store): State<AppState>,
    Path(sid): Path<String>,
    headers: HeaderMap,
    body: Bytes,
) -> ApiResult<Json<Value>> {
    let GroupBody { group_id } = json_body(&body)?;
    mutate(&store, &sid, &headers, |gc, probe| {
        *probe = add_group_extent(gc, probe, group_id)?;
        Ok(())
    })
}

fn query_usize(q: &HashMap<String, String>, key: &str, default: usize) -> ApiResult<usize> {
    match q.get(key) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|_| ApiError::BadRequest(format!("{key} must be a non-negative integer, got {v:?}"))),
    }
}

async fn get_reveal(
    State(store): State<AppState>,
    Path(sid): Path<String>,
    Query(q): Query<HashMap<String, String>>,
) -> ApiResult<Json<RevealView>> {
    let group = match q.get("group") {
        Some(v) => v
            .parse()
            .map_err(|_| ApiError::BadRequest(format!("group must be a group id, got {v:?}")))?,
        None => return Err(ApiError::BadRequest("missing query parameter group".into())),
    };
    let handle = store.session(&sid)?;
    let s = handle.lock().unwrap();
    let r = reveal(&s.dataset.data, &s.probe, group)?;
    Ok(Json(RevealView::new(&s.dataset.data, &r)))
}

async fn get_covers(
    State(store): State<AppState>,
    Path(sid): Path<String>,
    Query(q): Query<HashMap<String, String>>,
) -> ApiResult<Json<CoversView>> {
    let max_size = query_usize(&q, "maxSize", 3)?;
    let max_results = query_usize(&q, "maxResults", 50)?;
    let handle = store.session(&sid)?;
    let (d, probe) = {
        let s = handle.lock().unwrap();
        (s.dataset.clone(), s.probe.clone())
    };
    blocking(move || {
        let r = complementary_cover(&d.data, &probe, max_size, max_results)?;
        Ok(Json(CoversView::from(&r)))
    })
    .await
}
