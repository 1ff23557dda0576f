# Graph files and the built-in catalog
