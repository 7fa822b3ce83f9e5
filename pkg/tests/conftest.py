from __future__ import annotations

import json
import socket
import sys
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from arghelp._resources import data_path
from arghelp.argscore import segment_sentences
from arghelp.corpus import PipelineConfig, ingest


@pytest.fixture(scope="session")
def sample_file():
    return data_path("sample_reviews.jsonl")


@pytest.fixture(scope="session")
def sample_examples(sample_file):
    examples, _ = ingest(sample_file, PipelineConfig(sample_size=200), "Sample")
    return examples


@pytest.fixture
def write_jsonl(tmp_path):
    def write(records, name="reviews.jsonl"):
        path = tmp_path / name
        with open(path, "w", encoding="utf-8") as fh:
            for rec in records:
                fh.write(rec if isinstance(rec, str) else json.dumps(rec))
                fh.write("\n")
        return path

    return write


class _ScoreHandler(BaseHTTPRequestHandler):
    """Toy scorer endpoint: claim = 1 if the sentence contains 'because', evidence likewise for 'example'."""

    mode = "ok"
    fail_first = 0
    hits = 0

    def do_POST(self):
        cls = type(self)
        cls.hits += 1
        body = json.loads(self.rfile.read(int(self.headers["Content-Length"])))
        if cls.fail_first > 0:
            cls.fail_first -= 1
            self.send_response(503)
            self.end_headers()
            return
        if cls.mode == "bad_request":
            self.send_response(400)
            self.end_headers()
            return
        if cls.mode == "garbage":
            payload = b'{"sentences": [{"text": "x"}]}'
        else:
            sents = segment_sentences(body["text"])
            payload = json.dumps({"sentences": [
                {"text": s, "claim_score": 1.0 if "because" in s else -1.0,
                 "evidence_score": 0.5 if "example" in s else -0.5}
                for s in sents
            ]}).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def log_message(self, *args):
        pass


@pytest.fixture
def score_server():
    handler = type("Handler", (_ScoreHandler,), {"mode": "ok", "fail_first": 0, "hits": 0})
    server = ThreadingHTTPServer(("127.0.0.1", 0), handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    server.handler = handler
    server.url = f"http://127.0.0.1:{server.server_address[1]}"
    yield server
    server.shutdown()
    server.server_close()


@pytest.fixture
def dead_endpoint():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        port = s.getsockname()[1]
    return f"http://127.0.0.1:{port}"


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip("."))):
            terminalreporter.write_line(line)
