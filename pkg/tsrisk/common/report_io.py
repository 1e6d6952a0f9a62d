# Copyright (c) 2026  tsrisk Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License"
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
"""JSON and CSV output with stable bytes."""

import os
import csv
import json
import logging

import numpy as np

from .log_helper import get_logger

__all__ = ['to_jsonable', 'dumps_json', 'write_json', 'read_json', 'write_csv']

_logger = get_logger(__name__, level=logging.INFO)


def to_jsonable(obj):
    """Recursively convert numpy scalars/arrays and tuples to JSON types."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if hasattr(obj, 'to_dict'):
        return to_jsonable(obj.to_dict())
    return obj


def dumps_json(obj):
    return json.dumps(
        to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _ensure_parent(path):
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.exists(parent):
        os.makedirs(parent)


def write_json(obj, path):
    """
    Write one JSON object per file, UTF-8, sorted keys.
    Args:
        obj(dict): The object to write.
        path(str): Output file path.
    """
    _ensure_parent(path)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(dumps_json(obj))
    _logger.debug("write json: {}".format(path))


def read_json(path):
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def write_csv(header, rows, path):
    """
    Write an RFC-4180 CSV file (CRLF line endings, minimal quoting).
    Args:
        header(list<str>): Column names.
        rows(iterable<list>): Data rows.
        path(str): Output file path.
    """
    _ensure_parent(path)
    with open(path, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\r\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([to_jsonable(v) for v in row])
    _logger.debug("write csv: {}".format(path))
