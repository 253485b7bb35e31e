import json

from ._core import ConfigError, Session, __version__, known_checks, run_json, sha256_hex


def run(config):
    """Run a config (dict or JSON text) and return the report as a dict."""
    text = config if isinstance(config, str) else json.dumps(config)
    return json.loads(run_json(text))


__all__ = ["ConfigError", "Session", "__version__", "known_checks", "run", "run_json", "sha256_hex"]
