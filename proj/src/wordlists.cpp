#include "moralsrc/lexicon.hpp"

namespace moralsrc {

// Everyday content words with no moral valence.
const std::vector<std::string>& default_neutral_words() {
  static const std::vector<std::string> words = {
      "table",    "chair",    "window",   "door",     "paper",    "pencil",   "street",
      "building", "car",      "train",    "road",     "river",    "mountain", "tree",
      "grass",    "stone",    "water",    "weather",  "rain",     "cloud",    "morning",
      "evening",  "week",     "month",    "year",     "number",   "color",    "blue",
      "green",    "yellow",   "square",   "circle",   "line",     "corner",   "kitchen",
      "bottle",   "cup",      "plate",    "coffee",   "bread",    "apple",    "orange",
      "shirt",    "shoe",     "hat",      "clock",    "minute",   "hour",     "office",
      "desk",     "computer", "phone",    "screen",   "button",   "box",      "bag",
      "garden",   "floor",    "wall",     "roof",     "bridge",   "island",   "beach",
      "sand",     "metal",    "wood",     "glass",    "plastic",  "engine",   "wheel",
      "map",      "page",     "book",     "letter",   "word",     "sound",    "picture",
      "camera",   "music",    "song",     "dinner",   "lunch",    "breakfast", "temperature",
      "height",   "length",   "weight",   "size",     "shape",    "surface",  "material",
  };
  return words;
}

// English function words.
const std::vector<std::string>& default_stopwords() {
  static const std::vector<std::string> words = {
      "a",       "about",   "above",  "after",   "again",   "against", "all",     "am",
      "an",      "and",     "any",    "are",     "as",      "at",      "be",      "because",
      "been",    "before",  "being",  "below",   "between", "both",    "but",     "by",
      "can",     "could",   "did",    "do",      "does",    "doing",   "down",    "during",
      "each",    "few",     "for",    "from",    "further", "had",     "has",     "have",
      "having",  "he",      "her",    "here",    "hers",    "herself", "him",     "himself",
      "his",     "how",     "i",      "if",      "in",      "into",    "is",      "it",
      "its",     "itself",  "just",   "me",      "might",   "more",    "most",    "must",
      "my",      "myself",  "no",     "nor",     "not",     "now",     "of",      "off",
      "on",      "once",    "only",   "or",      "other",   "ought",   "our",     "ours",
      "ourselves", "out",   "over",   "own",     "same",    "shall",   "she",     "should",
      "so",      "some",    "such",   "than",    "that",    "the",     "their",   "theirs",
      "them",    "themselves", "then", "there",  "these",   "they",    "this",    "those",
      "through", "to",      "too",    "under",   "until",   "up",      "upon",    "us",
      "very",    "was",     "we",     "were",    "what",    "when",    "where",   "which",
      "while",   "who",     "whom",   "why",     "will",    "with",    "would",   "you",
      "your",    "yours",   "yourself", "yourselves", "'s",  "said",   "says",    "also",
  };
  return words;
}

}  // namespace moralsrc
