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
from .log_helper import get_logger
from .errors import *
from . import errors
from .rng import *
from . import rng
from .parallel import trial_map
from .report_io import to_jsonable, dumps_json, write_json, read_json, write_csv

__all__ = ['get_logger', 'trial_map', 'to_jsonable', 'dumps_json',
           'write_json', 'read_json', 'write_csv']
__all__ += errors.__all__
__all__ += rng.__all__
