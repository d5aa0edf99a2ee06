#pragma once

namespace storygen {

// Compiled-in copies of data/lexicon.tsv and data/ngram_corpus.txt.
extern const char* const kBuiltinLexiconTsv;
extern const char* const kBuiltinNgramCorpus;

}  // namespace storygen
