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


"""Simulated HDA controller, codec and beep-tone screen reader."""

from ._hdaccess import (
    Error,
    Machine,
    decode_command,
    decode_trace,
    default_profile_json,
    divider_for,
    encode_command,
    measure_frequency,
    render_beep,
    resolve_bar,
)

__all__ = [
    "Error",
    "Machine",
    "decode_command",
    "decode_trace",
    "default_profile_json",
    "divider_for",
    "encode_command",
    "measure_frequency",
    "render_beep",
    "resolve_bar",
]
