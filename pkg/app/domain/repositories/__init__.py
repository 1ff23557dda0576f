# Graph source interface
