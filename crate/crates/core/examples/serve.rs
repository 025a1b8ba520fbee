//! Starts the analysis service and sends it one request.
//!
//! cargo run --example serve

use kerf::service::{serve, ServiceConfig};

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let body = serde_json::json!({
        "gcode": std::fs::read_to_string(data.join("hexagon.nc"))?,
        "machine": serde_json::from_str::<serde_json::Value>(&std::fs::read_to_string(data.join("machine.json"))?)?,
        "options": { "view": "discontinuity" }
    });

    // the router can also be driven without a socket; see tests/service.rs
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await?;
    let addr = listener.local_addr()?;
    let server = tokio::spawn(serve(listener, ServiceConfig::default()));

    // a bare HTTP/1.1 exchange keeps the example free of client dependencies
    let payload = body.to_string();
    let request = format!(
        "POST /api/analyze HTTP/1.1\r\nHost: {addr}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{payload}",
        payload.len()
    );
    let mut stream = tokio::net::TcpStream::connect(addr).await?;
    tokio::io::AsyncWriteExt::write_all(&mut stream, request.as_bytes()).await?;
    let mut response = Vec::new();
    tokio::io::AsyncReadExt::read_to_end(&mut stream, &mut response).await?;
    let response = String::from_utf8_lossy(&response);
    let (head, json) = response.split_once("\r\n\r\n").unwrap_or((&response, ""));
    println!("{}", head.lines().next().unwrap_or(""));
    let v: serde_json::Value = serde_json::from_str(json)?;
    println!("request_hash {}", v["request_hash"]);
    println!("junctions {}", v["report"]["junctions"].as_array().map_or(0, Vec::len));
    println!("severity histogram {}", v["report"]["histograms"]["severity"]);
    server.abort();
    Ok(())
}
