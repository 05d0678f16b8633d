# Copyright 2026 The hdaccess Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


import json
import os
import random

import pytest

import hdaccess

SOURCE_DIR = os.environ.get(
    "HDACCESS_SOURCE_DIR", os.path.join(os.path.dirname(__file__), "..", "..")
)


def test_node0_identity():
    m = hdaccess.Machine()
    assert m.send_verb(0, 0, 0xF00, 0x00) == 0x14F1510F
    assert m.send_verb(0, 0, 0xF00, 0x02) == 0x00100100
    assert m.codec_mask == 1
    assert m.bar_base == 0xFEB00000
    assert m.fault_count == 0


def test_encode_decode_round_trip():
    rng = random.Random(1)
    for _ in range(2000):
        cad, nid = rng.randrange(16), rng.randrange(256)
        if rng.random() < 0.5:
            verb, payload, long_form = rng.choice([0x2, 0x3, 0xA, 0xB]), rng.randrange(1 << 16), True
        else:
            verb = rng.randrange(0x1000)
            while (verb >> 8) in (0x2, 0x3, 0xA, 0xB):
                verb = rng.randrange(0x1000)
            payload, long_form = rng.randrange(256), False
        word = hdaccess.encode_command(cad, nid, verb, payload, long_form)
        assert hdaccess.decode_command(word) == (cad, nid, verb, payload, long_form)


def test_encode_rejects_overflow():
    with pytest.raises(hdaccess.Error):
        hdaccess.encode_command(0, 0, 0xF00, 0x100)


def test_enumerate_finds_beep_generator():
    nodes = hdaccess.Machine().enumerate()
    beep = [n for n in nodes if n[1] == "beep-generator"]
    assert beep == [(0x12, "beep-generator", 0x00700000)]


def test_beep_through_the_driver():
    m = hdaccess.Machine()
    m.send_verb(0, 0x12, 0x70A, 10)
    m.advance_clock(500)
    m.send_verb(0, 0x12, 0x70A, 0)
    assert m.beep_timeline() == [(0.0, 10), (500.0, 0)]
    wav = m.render_wav(0x12, 500)
    assert len(wav) == 44 + 500 * 48 * 2
    assert abs(hdaccess.measure_frequency(wav, 500) - 1200) <= 1


def test_render_beep_size():
    assert len(hdaccess.render_beep(100, 1000)) == 96044


def test_resolve_bar_masks_flags():
    assert hdaccess.resolve_bar(0xFEB00004) == 0xFEB00000
    with pytest.raises(hdaccess.Error):
        hdaccess.resolve_bar(0)


def test_shipped_profile_matches_builtin():
    with open(os.path.join(SOURCE_DIR, "profiles", "cx-default.json")) as f:
        assert json.load(f) == json.loads(hdaccess.default_profile_json())


def test_custom_profile_and_errors():
    doc = json.loads(hdaccess.default_profile_json())
    doc["identity"]["vendor_response"] = "0x10EC0269"
    m = hdaccess.Machine(json.dumps(doc))
    assert m.send_verb(0, 0, 0xF00, 0) == 0x10EC0269
    with pytest.raises(hdaccess.Error, match="identity"):
        hdaccess.Machine('{"nodes": []}')


def test_decode_trace():
    assert hdaccess.decode_trace("000F0000\n") == ["0 0x00 GetParameter 0x00"]
