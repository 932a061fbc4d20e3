from src.core.hash_utils import canonical_json, compute_digest, digest_json, fingerprint, format_duration
from src.utils.logger import get_logger


def test_logger_is_singleton():
    assert get_logger() is get_logger()


def test_callbacks_receive_operation_messages():
    seen = []

    def callback(timestamp, level, message):
        seen.append((level, message))

    logger = get_logger()
    logger.add_callback(callback)
    try:
        logger.operation_start("Sweep", "n=[1, 2]", "3 units")
        logger.operation_end("Sweep", "n=[1, 2]", "done", success=False)
        logger.warning("careful")
    finally:
        logger.remove_callback(callback)

    assert seen[0] == ("INFO", "Start: [Sweep] n=[1, 2] - 3 units")
    assert seen[1] == ("INFO", "Failed: [Sweep] n=[1, 2] - done")
    assert seen[2] == ("WARNING", "careful")


def test_counterexample_is_a_warning():
    seen = []
    logger = get_logger()
    callback = lambda timestamp, level, message: seen.append((level, message))
    logger.add_callback(callback)
    try:
        logger.counterexample("theorem", "vertex_mismatch")
        logger.debug("detail")
    finally:
        logger.remove_callback(callback)

    assert seen == [("WARNING", "Counterexample in theorem: vertex_mismatch"), ("DEBUG", "detail")]


def test_failing_callback_does_not_break_logging():
    def broken(timestamp, level, message):
        raise RuntimeError("boom")

    logger = get_logger()
    logger.add_callback(broken)
    try:
        logger.info("still fine")
    finally:
        logger.remove_callback(broken)


def test_stderr_handler_is_idempotent(capsys):
    logger = get_logger()
    logger.enable_stderr()
    logger.enable_stderr()
    logger.info("visible once")
    logger.disable_stderr()
    logger.info("hidden")
    err = capsys.readouterr().err
    assert err.count("visible once") == 1
    assert "hidden" not in err


def test_digests_are_stable():
    assert compute_digest(b"abc") == compute_digest(b"abc")
    assert len(compute_digest(b"abc")) == 64
    assert canonical_json({"b": 1, "a": [1, 2]}) == b'{"a":[1,2],"b":1}'
    assert digest_json({"a": 1, "b": 2}) == digest_json({"b": 2, "a": 1})
    assert len(fingerprint({"a": 1})) == 16


def test_format_duration():
    assert format_duration(42) == "42s"
    assert format_duration(187) == "3m 07s"
    assert format_duration(3900) == "1h 05m"
    assert format_duration(-1) == "-"
