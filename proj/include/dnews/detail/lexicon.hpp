// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

// Built-in English lexicon. data/stopwords_en.txt and data/prep_config.json
// carry the same content; tests pin them against each other.

#include <cstddef>
#include <string_view>
#include <utility>

namespace dnews::detail {

inline constexpr std::string_view kDefaultStopwords[] = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "your", "yours",
    "yourself", "yourselves", "he", "him", "his", "himself", "she", "her", "hers", "herself",
    "it", "its", "itself", "they", "them", "their", "theirs", "themselves", "what", "which",
    "who", "whom", "this", "that", "these", "those", "am", "is", "are", "was", "were", "be",
    "been", "being", "have", "has", "had", "having", "do", "does", "did", "doing", "a", "an",
    "the", "and", "but", "if", "or", "because", "as", "until", "while", "of", "at", "by", "for",
    "with", "about", "against", "between", "into", "through", "during", "before", "after",
    "above", "below", "to", "from", "up", "down", "in", "out", "on", "off", "over", "under",
    "again", "further", "then", "once", "here", "there", "when", "where", "why", "how", "all",
    "any", "both", "each", "few", "more", "most", "other", "some", "such", "no", "nor", "not",
    "only", "own", "same", "so", "than", "too", "very", "s", "t", "can", "will", "just", "don",
    "should", "now", "d", "ll", "m", "o", "re", "ve", "y", "ain", "aren", "couldn", "didn",
    "doesn", "hadn", "hasn", "haven", "isn", "ma", "mightn", "mustn", "needn", "shan",
    "shouldn", "wasn", "weren", "won", "wouldn", "also", "would", "could", "may", "might",
    "must", "shall", "us", "upon", "among", "within", "without", "yet", "via", "per", "however",
    "although", "though", "whether", "across", "along", "since"};

struct SuffixRuleSpec {
    std::string_view suffix;
    std::string_view replacement;
    std::size_t min_stem;
};

// Applied in order; the first rule whose suffix matches with a long enough
// stem wins. Identity rules shield endings from the broader rules below them.
inline constexpr SuffixRuleSpec kDefaultSuffixRules[] = {
    {"sses", "ss", 1},
    {"ies", "y", 2},
    {"ss", "ss", 0},
    {"us", "us", 0},
    {"is", "is", 0},
    {"s", "", 3},
    {"ied", "y", 2},
    {"eed", "eed", 0},
    {"ated", "ate", 2},
    {"ized", "ize", 2},
    {"ised", "ise", 2},
    {"aged", "age", 1},
    {"used", "use", 1},
    {"ased", "ase", 1},
    {"ed", "", 3},
    {"ating", "ate", 2},
    {"izing", "ize", 2},
    {"ising", "ise", 2},
    {"aging", "age", 1},
    {"using", "use", 1},
    {"ing", "", 3},
};

inline constexpr std::pair<std::string_view, std::string_view> kDefaultLemmaExceptions[] = {
    // be / have / do / go / come
    {"am", "be"}, {"are", "be"}, {"is", "be"}, {"was", "be"}, {"were", "be"}, {"been", "be"},
    {"being", "be"}, {"has", "have"}, {"had", "have"}, {"having", "have"}, {"does", "do"},
    {"did", "do"}, {"done", "do"}, {"doing", "do"}, {"goes", "go"}, {"went", "go"},
    {"gone", "go"}, {"going", "go"}, {"came", "come"}, {"comes", "come"}, {"coming", "come"},
    // irregular verbs
    {"ate", "eat"}, {"eaten", "eat"}, {"began", "begin"}, {"begun", "begin"}, {"bent", "bend"},
    {"bitten", "bite"}, {"blew", "blow"}, {"blown", "blow"}, {"broke", "break"},
    {"broken", "break"}, {"brought", "bring"}, {"built", "build"}, {"bought", "buy"},
    {"caught", "catch"}, {"chose", "choose"}, {"chosen", "choose"}, {"dealt", "deal"},
    {"drew", "draw"}, {"drawn", "draw"}, {"drank", "drink"}, {"drunk", "drink"},
    {"drove", "drive"}, {"driven", "drive"}, {"fell", "fall"}, {"fallen", "fall"},
    {"felt", "feel"}, {"fought", "fight"}, {"found", "find"}, {"fled", "flee"}, {"flew", "fly"},
    {"flown", "fly"}, {"forgot", "forget"}, {"forgotten", "forget"}, {"froze", "freeze"},
    {"frozen", "freeze"}, {"gave", "give"}, {"given", "give"}, {"got", "get"},
    {"gotten", "get"}, {"grew", "grow"}, {"grown", "grow"}, {"heard", "hear"}, {"held", "hold"},
    {"hid", "hide"}, {"hidden", "hide"}, {"kept", "keep"}, {"knew", "know"}, {"known", "know"},
    {"laid", "lay"}, {"led", "lead"}, {"lent", "lend"}, {"lost", "lose"}, {"made", "make"},
    {"meant", "mean"}, {"met", "meet"}, {"paid", "pay"}, {"ran", "run"}, {"rang", "ring"},
    {"rose", "rise"}, {"risen", "rise"}, {"rising", "rise"}, {"saw", "see"}, {"seen", "see"},
    {"sold", "sell"}, {"sent", "send"}, {"shook", "shake"}, {"shaken", "shake"},
    {"shot", "shoot"}, {"sang", "sing"}, {"sung", "sing"}, {"sank", "sink"}, {"sunk", "sink"},
    {"sat", "sit"}, {"slept", "sleep"}, {"spoke", "speak"}, {"spoken", "speak"},
    {"spent", "spend"}, {"stood", "stand"}, {"stole", "steal"}, {"stolen", "steal"},
    {"struck", "strike"}, {"swept", "sweep"}, {"swam", "swim"}, {"took", "take"},
    {"taken", "take"}, {"taught", "teach"}, {"tore", "tear"}, {"torn", "tear"},
    {"thought", "think"}, {"threw", "throw"}, {"thrown", "throw"},
    {"understood", "understand"}, {"woke", "wake"}, {"woken", "wake"}, {"wore", "wear"},
    {"worn", "wear"}, {"wrote", "write"}, {"written", "write"}, {"died", "die"},
    {"dying", "die"}, {"lying", "lie"}, {"tied", "tie"}, {"fixed", "fix"},
    {"stopped", "stop"}, {"planned", "plan"}, {"dropped", "drop"}, {"hitting", "hit"},
    {"running", "run"}, {"getting", "get"}, {"putting", "put"}, {"cutting", "cut"},
    {"setting", "set"}, {"making", "make"}, {"taking", "take"}, {"giving", "give"},
    {"living", "live"}, {"leaving", "leave"}, {"moving", "move"},
    {"saving", "save"}, {"raised", "raise"}, {"closed", "close"}, {"declared", "declare"},
    {"continued", "continue"}, {"continuing", "continue"}, {"issued", "issue"},
    // irregular nouns
    {"children", "child"}, {"men", "man"}, {"women", "woman"}, {"feet", "foot"},
    {"teeth", "tooth"}, {"mice", "mouse"}, {"geese", "goose"}, {"lives", "life"},
    {"wives", "wife"}, {"knives", "knife"}, {"leaves", "leaf"}, {"halves", "half"},
    {"shelves", "shelf"}, {"wolves", "wolf"}, {"thieves", "thief"}, {"crises", "crisis"},
    {"analyses", "analysis"}, {"criteria", "criterion"}, {"phenomena", "phenomenon"},
    {"houses", "house"}, {"causes", "cause"}, {"damages", "damage"}, {"villages", "village"},
    {"images", "image"}, {"messages", "message"}, {"services", "service"},
    {"sources", "source"}, {"resources", "resource"}, {"prices", "price"},
    // words the suffix rules would damage
    {"news", "news"}, {"series", "series"}, {"species", "species"}, {"always", "always"},
    {"perhaps", "perhaps"}, {"sometimes", "sometimes"}, {"besides", "besides"},
    {"towards", "towards"}, {"afterwards", "afterwards"}, {"politics", "politics"},
    {"economics", "economics"}, {"physics", "physics"}, {"morning", "morning"},
    {"evening", "evening"}, {"nothing", "nothing"}, {"something", "something"},
    {"anything", "anything"}, {"everything", "everything"}, {"ceiling", "ceiling"},
    {"wedding", "wedding"}, {"spring", "spring"}, {"string", "string"},
    {"sibling", "sibling"}, {"hundred", "hundred"}, {"sacred", "sacred"},
    {"naked", "naked"}, {"united", "united"},
    // proper nouns in plural form
    {"philippines", "philippines"}, {"visayas", "visayas"}, {"marcos", "marcos"},
    {"chronicles", "chronicles"},
};

}  // namespace dnews::detail
