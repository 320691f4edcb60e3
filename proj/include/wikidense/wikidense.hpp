// Copyright 2026 The Wikidense Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "wikidense/alignment.hpp"
#include "wikidense/base.hpp"
#include "wikidense/cooccurrence.hpp"
#include "wikidense/corpus_model.hpp"
#include "wikidense/densifier.hpp"
#include "wikidense/dictionary.hpp"
#include "wikidense/id_space.hpp"
#include "wikidense/pipeline.hpp"
#include "wikidense/serialization.hpp"
#include "wikidense/stats.hpp"
