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
from .version import tsrisk_version as __version__
from . import common
from . import process
from . import bounds
from . import concentration
from . import hypothesis
from . import rademacher
from . import certificate

__all__ = [
    'common', 'process', 'bounds', 'concentration', 'hypothesis',
    'rademacher', 'certificate'
]
