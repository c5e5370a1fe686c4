"""LLM-backed pair similarity: two-step chain-of-thought prompts, content-hash
caching, and bounded retry around a chat-completion-style HTTP endpoint.

The toolkit computes its aggregate metrics deterministically from the step-1
scores; the step-2 prompts are rendered for users who want to replay the
LLM-aggregated workflow themselves.
"""

import hashlib
import json
import os
import time
from pathlib import Path

from .assets import BackendConfig, BackendKind, SimilarityRecord, structural_similarity
from .errors import BackendError, UnparseableResponseError

ENDPOINT_ENV = "CLONESCOPE_LLM_ENDPOINT"
API_KEY_ENV = "CLONESCOPE_LLM_KEY"

STEP1_SIMILARITY_PROMPT = (
    "Please analyze the similarity of the file pairs and provide a similarity "
    "score between 0% and 100%."
)
STEP2_COUNTS_PROMPT = (
    "Please analyze the files in the folder and output the number of clone "
    "files and clone groups, referencing the cloning information of each file "
    "pair from the Output of Step 1."
)
STEP2_CLONE_INDEX_PROMPT = (
    "Please analyze the files in the folder and output the clone index of the "
    "files, referencing the cloning information of each file pair from the "
    "Output of Step 1."
)

_RETRIES = 3
_BACKOFF_SECONDS = 1.0


def build_step1_prompt(unit_a, unit_b) -> str:
    return (
        f"{STEP1_SIMILARITY_PROMPT}\n\n"
        f"File A ({unit_a.rel_path}):\n{unit_a.content}\n\n"
        f"File B ({unit_b.rel_path}):\n{unit_b.content}\n"
    )


def emit_step2_prompt(records, metric="counts") -> str:
    """Render the step-2 prompt with the step-1 pair scores attached."""
    header = STEP2_COUNTS_PROMPT if metric == "counts" else STEP2_CLONE_INDEX_PROMPT
    lines = [f"{r.a} <-> {r.b}: {r.score * 100:.2f}%" for r in records]
    return header + "\n\nOutput of Step 1:\n" + "\n".join(lines) + "\n"


def parse_similarity_response(text) -> float:
    """Extract a similarity score from the final non-empty line of a reply.

    Accepts a percentage (e.g. "85%", "85") or a fraction (e.g. "0.85");
    anything else raises, never guesses.
    """
    import re

    lines = [line for line in str(text).splitlines() if line.strip()]
    if not lines:
        raise UnparseableResponseError(text)
    match = re.search(r"(\d+(?:\.\d+)?)\s*(%)?", lines[-1])
    if not match:
        raise UnparseableResponseError(text)
    value = float(match.group(1))
    if match.group(2):
        score = value / 100.0
    elif value <= 1.0:
        score = value
    else:
        score = value / 100.0
    if not 0.0 <= score <= 1.0:
        raise UnparseableResponseError(text)
    return score


def _pair_cache_key(content_a, content_b) -> str:
    ha = hashlib.sha256(content_a.encode("utf-8")).hexdigest()
    hb = hashlib.sha256(content_b.encode("utf-8")).hexdigest()
    lo, hi = sorted((ha, hb))
    return f"{lo}_{hi}"


def _http_transport(cfg):
    import requests

    endpoint = cfg.endpoint or os.environ.get(ENDPOINT_ENV)
    api_key = cfg.api_key or os.environ.get(API_KEY_ENV)
    if not endpoint:
        raise BackendError(f"LLM backend needs an endpoint ({ENDPOINT_ENV})")

    def transport(prompt):
        headers = {"Content-Type": "application/json"}
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        payload = {
            "model": cfg.model_name or "gpt-4o",
            "messages": [{"role": "user", "content": prompt}],
        }
        response = requests.post(endpoint, json=payload, headers=headers, timeout=120)
        response.raise_for_status()
        body = response.json()
        return body["choices"][0]["message"]["content"]

    return transport


class LLMSimilarityBackend:
    """Scores asset pairs via the step-1 similarity prompt.

    `transport` is a callable prompt -> reply text; when omitted an HTTP
    chat-completion client is built from the config / environment. Scores are
    cached per unordered content-hash pair; a warm cache issues no requests.
    """

    def __init__(self, cfg: BackendConfig, transport=None, audit_log=None,
                 backoff_seconds=_BACKOFF_SECONDS):
        self.cfg = cfg
        self.transport = transport or _http_transport(cfg)
        self.audit_log = audit_log
        self.backoff_seconds = backoff_seconds
        self.requests_made = 0
        self.warnings = []
        self._memory_cache = {}

    def _cache_path(self, key):
        if not self.cfg.cache_dir:
            return None
        return Path(self.cfg.cache_dir) / f"{key}.json"

    def _cache_get(self, key):
        if key in self._memory_cache:
            return self._memory_cache[key]
        path = self._cache_path(key)
        if path is not None and path.exists():
            return json.loads(path.read_text(encoding="utf-8"))["score"]
        return None

    def _cache_put(self, key, score):
        self._memory_cache[key] = score
        path = self._cache_path(key)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(
            json.dumps(
                {"score": score, "backend": "llm", "model": self.cfg.model_name},
                sort_keys=True,
            ),
            encoding="utf-8",
        )
        tmp.replace(path)

    def _call(self, prompt):
        last_error = None
        for attempt in range(_RETRIES):
            try:
                reply = self.transport(prompt)
                self.requests_made += 1
                if self.audit_log is not None:
                    self.audit_log.append({"prompt": prompt, "response": reply})
                return reply
            except UnparseableResponseError:
                raise
            except Exception as exc:  # noqa: BLE001 - network/auth failures retried
                last_error = exc
                if attempt < _RETRIES - 1:
                    time.sleep(self.backoff_seconds * (2**attempt))
        raise BackendError(f"LLM request failed after {_RETRIES} attempts: {last_error}")

    def score_pair(self, unit_a, unit_b) -> SimilarityRecord:
        key = _pair_cache_key(unit_a.content, unit_b.content)
        cached = self._cache_get(key)
        if cached is not None:
            return SimilarityRecord(
                unit_a.rel_path, unit_b.rel_path, cached, BackendKind.LLM, cached=True
            )
        if len(unit_a.content) + len(unit_b.content) > self.cfg.max_pair_chars:
            self.warnings.append(
                f"{unit_a.rel_path} / {unit_b.rel_path}: prompt over context budget, "
                "falling back to structural similarity"
            )
            from .assets import parse_asset

            score = structural_similarity(parse_asset(unit_a), parse_asset(unit_b))
            return SimilarityRecord(
                unit_a.rel_path, unit_b.rel_path, score, BackendKind.STRUCTURAL
            )
        reply = self._call(build_step1_prompt(unit_a, unit_b))
        score = parse_similarity_response(reply)
        self._cache_put(key, score)
        return SimilarityRecord(unit_a.rel_path, unit_b.rel_path, score, BackendKind.LLM)

    def scorer(self, units_by_path):
        """Adapter for detect_clone_files: documents in, records out."""

        def score(doc_a, doc_b):
            return self.score_pair(units_by_path[doc_a.unit_path], units_by_path[doc_b.unit_path])

        return score
