// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

#include "dnews/bundle.hpp"
#include "dnews/corpus.hpp"
#include "dnews/error.hpp"
#include "dnews/eval.hpp"
#include "dnews/features.hpp"
#include "dnews/harvester/extract.hpp"
#include "dnews/harvester/harvest.hpp"
#include "dnews/harvester/html.hpp"
#include "dnews/harvester/selector.hpp"
#include "dnews/label.hpp"
#include "dnews/models/ensemble.hpp"
#include "dnews/models/logistic_regression.hpp"
#include "dnews/models/naive_bayes.hpp"
#include "dnews/models/random_forest.hpp"
#include "dnews/pipeline.hpp"
#include "dnews/synth.hpp"
#include "dnews/textprep.hpp"
#include "dnews/wordcloud.hpp"
