// Placeholder; the book chapters are wired in as doc-tests once written.
