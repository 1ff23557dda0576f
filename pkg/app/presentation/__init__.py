# Click command group and output
