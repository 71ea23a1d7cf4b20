import threading
import time
from concurrent.futures import ThreadPoolExecutor

import httpx
import pytest
import uvicorn

from nimcube.core import all_winning_moves
from nimcube.server import create_app


@pytest.fixture(scope="module")
def base_url():
    app = create_app(budget_exponent=16, session_ttl_seconds=120.0)
    config = uvicorn.Config(app, host="127.0.0.1", port=0, log_level="warning")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.time() + 10
    while not server.started:
        if time.time() > deadline:
            raise RuntimeError("server did not start")
        time.sleep(0.01)
    port = server.servers[0].sockets[0].getsockname()[1]
    yield f"http://127.0.0.1:{port}"
    server.should_exit = True
    thread.join(timeout=5)


@pytest.fixture()
def client(base_url):
    with httpx.Client(base_url=base_url, timeout=10.0) as c:
        yield c


def test_create_game_returns_classification(client):
    r = client.post("/games", json={"piles": [4, 6, 9], "human_first": True})
    assert r.status_code == 200
    body = r.json()
    assert body["position"] == [4, 6, 9]
    assert body["to_move"] == "human"
    assert body["status"] == "in_progress"
    assert body["classification"] == "N"
    assert body["id"]


def test_create_game_lost_opening_warns_p(client):
    body = client.post("/games", json={"piles": [1, 2, 3]}).json()
    assert body["classification"] == "P"
    assert body["engine_move"] is None


def test_create_game_engine_first_plays_opening(client):
    body = client.post("/games",
                       json={"piles": [4, 6, 9], "human_first": False}).json()
    assert body["classification"] == "N"
    assert body["engine_move"] == {
        "pile_index": 2, "new_size": 2,
        "position": [4, 6, 2], "classification": "P",
    }
    assert body["position"] == [4, 6, 2]
    assert body["to_move"] == "human"


def test_create_game_rejects_all_zero(client):
    r = client.post("/games", json={"piles": [0, 0]})
    assert r.status_code == 400
    assert r.json()["code"] == "bad_request"


def test_create_game_rejects_empty_and_oversized(client):
    assert client.post("/games", json={"piles": []}).json()["code"] == "bad_request"
    r = client.post("/games", json={"piles": [2**64]})
    assert r.status_code == 400
    assert r.json()["code"] == "bad_request"


def test_move_gets_engine_reply_restoring_zero_sum(client):
    game = client.post("/games", json={"piles": [4, 6, 9]}).json()
    r = client.post(f"/games/{game['id']}/moves",
                    json={"pile_index": 0, "new_size": 0})
    assert r.status_code == 200
    body = r.json()
    assert body["human_move"]["position"] == [0, 6, 9]
    assert body["engine_move"] == {
        "pile_index": 2, "new_size": 6,
        "position": [0, 6, 6], "classification": "P",
    }
    assert body["position"] == [0, 6, 6]
    assert body["to_move"] == "human"
    assert body["status"] == "in_progress"


def test_winning_human_move_ends_without_engine_reply(client):
    game = client.post("/games", json={"piles": [1]}).json()
    body = client.post(f"/games/{game['id']}/moves",
                       json={"pile_index": 0, "new_size": 0}).json()
    assert body["status"] == "human_won"
    assert body["engine_move"] is None


def test_illegal_move_codes(client):
    game = client.post("/games", json={"piles": [2, 2]}).json()
    r = client.post(f"/games/{game['id']}/moves",
                    json={"pile_index": 0, "new_size": 2})
    assert r.status_code == 400
    assert r.json()["code"] == "illegal_move"

    r = client.post(f"/games/{game['id']}/moves",
                    json={"pile_index": 7, "new_size": 0})
    assert r.json()["code"] == "illegal_move"


def test_engine_first_game_is_playable(client):
    # After the auto-opening it is the human's turn, so the session never
    # deadlocks in the engine's favor.
    game = client.post("/games", json={"piles": [3, 3], "human_first": False}).json()
    assert game["to_move"] == "human"
    r = client.post(f"/games/{game['id']}/moves",
                    json={"pile_index": 0, "new_size": 0})
    assert r.status_code == 200


def test_terminal_game_code(client):
    game = client.post("/games", json={"piles": [1]}).json()
    client.post(f"/games/{game['id']}/moves", json={"pile_index": 0, "new_size": 0})
    r = client.post(f"/games/{game['id']}/moves",
                    json={"pile_index": 0, "new_size": 0})
    assert r.status_code == 409
    assert r.json()["code"] == "terminal_game"


def test_unknown_session_code(client):
    r = client.post("/games/doesnotexist/moves",
                    json={"pile_index": 0, "new_size": 0})
    assert r.status_code == 404
    assert r.json()["code"] == "not_found"
    assert client.get("/games/doesnotexist/hint").status_code == 404


def test_unknown_route_maps_to_not_found(client):
    r = client.get("/nope")
    assert r.status_code == 404
    assert r.json()["code"] == "not_found"


def test_malformed_body_maps_to_bad_request(client):
    r = client.post("/games", json={"piles": "zebra"})
    assert r.status_code == 400
    assert r.json()["code"] == "bad_request"


def test_hint_endpoint_matches_library(client):
    game = client.post("/games", json={"piles": [1, 1, 1]}).json()
    body = client.get(f"/games/{game['id']}/hint").json()
    assert body["classification"] == "N"
    expected = [{"pile_index": m.pile_index, "new_size": m.new_size}
                for m in all_winning_moves((1, 1, 1))]
    assert body["winning_moves"] == expected

    lost = client.post("/games", json={"piles": [5, 5]}).json()
    body = client.get(f"/games/{lost['id']}/hint").json()
    assert body == {"classification": "P", "winning_moves": []}


def test_concurrent_moves_linearized(client, base_url):
    # Two identical concurrent posts: once pile 2 hits zero it can never be
    # reduced again, so exactly one succeeds and one is rejected.
    def fire(game_id):
        with httpx.Client(base_url=base_url, timeout=10.0) as c:
            return c.post(f"/games/{game_id}/moves",
                          json={"pile_index": 2, "new_size": 0})

    for _ in range(5):
        game = client.post("/games", json={"piles": [1, 2, 3]}).json()
        with ThreadPoolExecutor(max_workers=2) as pool:
            futures = [pool.submit(fire, game["id"]) for _ in range(2)]
            responses = [f.result() for f in futures]
        responses.sort(key=lambda r: r.status_code)
        assert responses[0].status_code == 200
        assert responses[1].status_code != 200
        assert responses[1].json()["code"] in ("wrong_turn", "illegal_move")


def test_session_survives_errors_atomically(client):
    # A rejected move must leave the stored session untouched.
    game = client.post("/games", json={"piles": [4, 6, 9]}).json()
    client.post(f"/games/{game['id']}/moves", json={"pile_index": 0, "new_size": 9})
    body = client.post(f"/games/{game['id']}/moves",
                       json={"pile_index": 0, "new_size": 0}).json()
    assert body["human_move"]["position"] == [0, 6, 9]


def test_fractal_endpoint_first_iteration(client):
    r = client.get("/fractal", params={"d": 3, "n": 1})
    assert r.status_code == 200
    body = r.json()
    assert body == {
        "d": 3, "n": 1, "count": 4,
        "points": [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]],
    }


def test_fractal_count_follows_cardinality_formula(client):
    for n in range(1, 5):
        body = client.get("/fractal", params={"d": 3, "n": n}).json()
        assert body["count"] == 2 ** (2 * n)
        assert len(body["points"]) == body["count"]


def test_fractal_responses_byte_identical(client):
    first = client.get("/fractal", params={"d": 3, "n": 3})
    second = client.get("/fractal", params={"d": 3, "n": 3})
    assert first.content == second.content


def test_fractal_budget_exceeded_echoes_limit(client):
    r = client.get("/fractal", params={"d": 3, "n": 9})
    assert r.status_code == 400
    body = r.json()
    assert body["code"] == "budget_exceeded"
    assert body["limit_exponent"] == 16
    assert body["required_exponent"] == 18


def test_fractal_validation(client):
    assert client.get("/fractal", params={"d": 0, "n": 1}).json()["code"] == \
        "bad_request"
    assert client.get("/fractal", params={"d": 3, "n": 0}).json()["code"] == \
        "bad_request"
    assert client.get("/fractal", params={"d": 3}).json()["code"] == "bad_request"


def test_shadow_endpoint_all_ones(client):
    body = client.get("/fractal/shadow", params={"d": 3, "n": 3, "axis": 2}).json()
    assert body["all_ones"] is True
    assert body["cells"] == 64
    assert body["total"] == 64
    assert "counts" not in body


def test_shadow_endpoint_axis_validation(client):
    r = client.get("/fractal/shadow", params={"d": 3, "n": 2, "axis": 5})
    assert r.status_code == 400
    assert r.json()["code"] == "bad_request"


def test_index_lists_endpoints(client):
    body = client.get("/").json()
    assert body["service"] == "nimcube"
